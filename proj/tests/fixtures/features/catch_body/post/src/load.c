int load(int fd) {
  int n = 0;
  try {
    n = read_all(fd);
  } catch (int e) {
    n = fallback(fd);
  }
  return n;
}
