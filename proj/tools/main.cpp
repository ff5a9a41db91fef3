#include "lbsnet/cli.hpp"

int main(int argc, char** argv) { return lbsnet::run_cli(argc, argv); }
