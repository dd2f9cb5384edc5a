int check(int n) {
  if (n > 100) {
    n = 100;
    report("bad size", n);
  }
  return n;
}
