int tag(int v) {
  char* name = "none";
  v = -v;
  return v;
}
