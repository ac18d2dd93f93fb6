// Acceptance gate: runs the end-to-end reproduction criteria and prints one
// pass/fail line per criterion.  Exit 0 iff every requested criterion passes.
//
//   cmap_acceptance            run all criteria
//   cmap_acceptance --only K   run criterion K (1-10)
//   cmap_acceptance --jobs N   worker threads where a criterion can use them

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <thread>
#include <vector>

#include "cmap/repro.hpp"

int main(int argc, char** argv) {
  int only = 0;
  unsigned hw = std::thread::hardware_concurrency();
  int jobs = hw ? static_cast<int>(hw) : 1;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc) {
      jobs = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only K] [--jobs N]\n", argv[0]);
      return 64;
    }
  }
  if (only < 0 || only > cmap::repro::kNumCriteria || jobs < 1) {
    std::fprintf(stderr, "usage: %s [--only K] [--jobs N]\n", argv[0]);
    return 64;
  }

  std::vector<int> ids;
  if (only)
    ids.push_back(only);
  else
    for (int id = 1; id <= cmap::repro::kNumCriteria; ++id) ids.push_back(id);

  bool all_pass = true;
  for (int id : ids) {
    cmap::repro::CriterionResult r = cmap::repro::run_criterion(id, jobs);
    all_pass = all_pass && r.pass;
    std::printf("%s  criterion %2d  %-24s  %7.2fs / %5.0fs  %s\n",
                r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.budget_seconds, r.detail.c_str());
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
