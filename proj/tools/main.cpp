#include "lgv/cli.hpp"

int main(int argc, char** argv) { return lgv::run_cli(argc, argv); }
