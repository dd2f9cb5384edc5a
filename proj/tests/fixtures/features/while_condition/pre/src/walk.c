int walk(int n) {
  int i = 0;
  while (i < n) {
    i = step(i);
  }
  return i;
}
