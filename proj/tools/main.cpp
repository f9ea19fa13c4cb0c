#include "tpqkd/harness.hpp"

int main(int argc, char** argv) { return tpqkd::run_cli(argc, argv); }
