#include <cstdio>
int main() { std::puts("etale cli placeholder"); return 0; }
