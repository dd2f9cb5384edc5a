int get_a(int v) {
  int r = limit(v);
  return r;
}
