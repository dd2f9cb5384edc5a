int total = 0;

void bump(int x) {
  total = total * 2;
}
