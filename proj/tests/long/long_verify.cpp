// Full verification of the shifted parallel linkage code at q=2, k=d=4, n1=4, n2=5, t=1.
#include <algorithm>
#include <cstdio>
#include <thread>

#include "cdc/constructions.hpp"

int main() {
  const cdc::ParallelLinkageParams p{2, 4, 4, 4, 5, 1, cdc::Orientation::Forward};
  const auto built = cdc::build_parallel_linkage(p);
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  const auto r = cdc::verify_cdc(built.code, 4, cdc::VerifyOptions{cdc::FullCheck{}, workers, {}});
  std::printf("M=%zu pairs=%llu min_distance=%zu ok=%d\n", built.code.size(),
              static_cast<unsigned long long>(r.pairs_checked), r.observed_min_distance.value_or(0), r.ok ? 1 : 0);
  return r.ok && built.code.size() == 33854 && r.observed_min_distance == 4u ? 0 : 1;
}
