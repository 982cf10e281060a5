#include <cstdio>
int main() { std::puts("vtnav: placeholder"); return 0; }
