#include "excision_lab.h"
int main() { return exl_version() ? 0 : 1; }
