#include <iostream>

#include "cat0/selftest.hpp"

int main(int argc, char** argv) {
  cat0::selftest::Config cfg;
  if (argc > 1) cfg.seed = std::stoull(argv[1]);
  bool all = true;
  cat0::selftest::run_all(cfg, [&](const cat0::selftest::Result& r) {
    std::cout << cat0::selftest::line(r) << std::endl;
    all = all && r.pass;
  });
  std::cout << (all ? "all criteria pass" : "some criteria FAIL") << std::endl;
  return all ? 0 : 1;
}
