// Command-line surface; subcommands: simulate | find-orbit | verify | sweep.
#include <cstdio>

int main() { return 0; } // placeholder while the library comes up
