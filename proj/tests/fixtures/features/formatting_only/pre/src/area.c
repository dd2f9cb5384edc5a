int area(int w, int h) {
  int a = w * h;
  if (a > 100) {
    a = 100;
  }
  return a;
}
