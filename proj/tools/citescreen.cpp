#include "citescreen/cli.hpp"

int main(int argc, char** argv) { return citescreen::cli::dispatch(argc, argv); }
