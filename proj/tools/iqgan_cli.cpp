// placeholder
#include "iqgan.h"
int main(){ return iqg_builtin_model_count() == 12 ? 0 : 1; }
