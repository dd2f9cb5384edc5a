int id(int v) {
  // identity for now

  return v;
}
