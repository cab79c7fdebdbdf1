#include "fracwell/cli.hpp"

int main(int argc, char** argv) { return fracwell::run_cli(argc, argv); }
