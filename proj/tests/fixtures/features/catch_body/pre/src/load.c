int load(int fd) {
  int n = 0;
  try {
    n = read_all(fd);
  } catch (int e) {
    n = -1;
  }
  return n;
}
