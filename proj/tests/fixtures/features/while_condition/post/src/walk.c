int walk(int n) {
  int i = 0;
  while (i < n && i >= 0) {
    i = step(i);
  }
  return i;
}
