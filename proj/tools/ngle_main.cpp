#include "ngle/cli.hpp"

int main(int argc, char** argv) { return ngle::run_cli(argc, argv); }
