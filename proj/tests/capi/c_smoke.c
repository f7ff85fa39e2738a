#include "excision_lab.h"
int main(void) { return exl_version() ? 0 : 1; }
