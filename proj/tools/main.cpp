#include "cli.hpp"

int main(int argc, char** argv) { return facinv::cli::run(argc, argv); }
