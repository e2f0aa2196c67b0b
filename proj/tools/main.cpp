#include "peisert/cli.hpp"

int main(int argc, char** argv) { return peisert::cli::run(argc, argv); }
