int drain(int n) {
  int k = 0;
  do {
    k++;
  } while (k < n);
  return k;
}
