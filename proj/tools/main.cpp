#include <cstdio>

int main() {
  std::puts("sympsig: subcommands not wired yet");
  return 0;
}
