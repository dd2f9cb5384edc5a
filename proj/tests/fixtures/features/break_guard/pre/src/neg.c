int first_neg(int n) {
  int v = 0;
  for (int i = 0; i < n; i++) {
    v = value(i);
  }
  return v;
}
