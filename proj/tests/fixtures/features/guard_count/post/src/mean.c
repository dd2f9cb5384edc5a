int mean(int sum, int count) {
  int m = 0;
  if (count != 0) {
    m = sum / count;
    log_value(count);
  }
  return m;
}
