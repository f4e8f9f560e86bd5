#include "rmtwork/cli.hpp"

int main(int argc, char** argv) { return rmtwork::cli::run(argc, argv); }
