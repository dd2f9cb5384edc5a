int sum_to(int n) {
  int total = 0;
  for (int i = 0; i < n; i++) {
    total = total + i;
  }
  return total;
}
