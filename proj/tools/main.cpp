#include "tokensched/cli.hpp"

int main(int argc, char** argv) { return tokensched::cli::cli_dispatch(argc, argv); }
