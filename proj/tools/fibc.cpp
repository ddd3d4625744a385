#include "fibc_cli.hpp"

int main(int argc, char** argv) { return fibc::cli::run(argc, argv); }
