int load(int fd) {
  int n = 0;
  try {
    n = read_all(fd);
    validate(n);
  } catch (int e) {
    n = -1;
  }
  return n;
}
