int mode(int m) {
  int r = 0;
  switch (m) {
    case 1:
      r = 10;
      break;
    default:
      r = 20;
  }
  return r;
}
