int get_b(int v) {
  int r = v * 2;
  return r;
}
