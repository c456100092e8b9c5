#include <cstdlib>
#include <iostream>
#include <string>

#include "ssg/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : SSG_CORPUS_DIR;
  const int only = argc > 2 ? std::atoi(argv[2]) : 0;
  bool ok = true;
  for (const auto& r : ssg::run_acceptance(dir, only, &std::cout)) ok = ok && r.pass();
  return ok ? 0 : 1;
}
