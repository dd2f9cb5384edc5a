int total;

void bump(int x) {
  total = total + 1;
}
