#include <cstdio>

int main() {
  std::puts("effham: subcommands pending");
  return 0;
}
