int pump(int a, int b) {
  int s = 0;
  if (a > 0)
    s = s + clamp(a);
  if (b > 0)
    s = s + clamp(b);
  return s;
}
