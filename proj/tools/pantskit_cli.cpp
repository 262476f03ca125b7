#include <cstdio>

int main() {
  std::puts("pantskit: no subcommand given");
  return 2;
}
