int tag(int v) {
  char* name = "n/a";
  bool ok = true;
  v = -v;
  ok = v > 0;
  return v;
}
