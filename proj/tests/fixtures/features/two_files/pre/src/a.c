int get_a(int v) {
  int r = v;
  return r;
}
