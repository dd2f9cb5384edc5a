int grade(int s) {
  int g = 0;
  if (s > 90) {
    g = 4;
  } else if (s >= 50) {
    g = 2;
  }
  return g;
}
