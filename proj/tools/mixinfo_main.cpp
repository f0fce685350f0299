#include "mixinfo/cli.hpp"

int main(int argc, char** argv) { return mixinfo::run_cli(argc, argv); }
