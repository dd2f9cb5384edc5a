int scan(int n) {
  bool done = false;
  int i = 0;
  while (i < n) {
    i++;
  }
  return i;
}
