#include "lffc/cli.hpp"

int main(int argc, char** argv) { return lffc::dispatch(argc, argv); }
