int get_b(int v) {
  int r = limit(v) * 2;
  return r;
}
