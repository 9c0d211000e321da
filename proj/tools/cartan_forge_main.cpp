#include "cartanforge/cli.hpp"

int main(int argc, char** argv) { return cartanforge::run_cli(argc, argv); }
