#include <stdio.h>
#include "excision_lab.h"
int main() { printf("%s\n", exl_version()); return 0; }
