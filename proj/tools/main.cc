#include "commands.h"

int main(int argc, char** argv) { return routeq::tools::Main(argc, argv); }
