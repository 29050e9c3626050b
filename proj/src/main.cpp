#include "qcrit/version.hpp"
#include <cstdio>
int main() { std::printf("qcrit %s\n", qcrit::kVersion); return 0; }
