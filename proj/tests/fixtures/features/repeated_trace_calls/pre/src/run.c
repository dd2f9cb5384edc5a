void run(int n) {
  start(n);
  finish(n);
}
