#include "vproof/corpus.hpp"

namespace vproof::corpus {
namespace {

// Pours until at least the requested quantity has been released. The pour
// amount comes from the environment, so zero-pour runs never terminate and
// surface as depth-exhausted paths under a finite unrolling.
uint32_t water(ExecutionContext& ctx, uint32_t qty, const ChoiceDomain& pour) {
  uint32_t poured = 0;
  while (poured < qty)
    poured += static_cast<uint32_t>(nd_value(ctx, pour, "pour"));
  return poured;
}

} // namespace

ProofBody make_water_proof(const WaterOptions& options) {
  return [options](ExecutionContext& ctx) {
    auto qty = static_cast<uint32_t>(nd_value(ctx, options.qty, "qty"));
    assume(ctx, qty <= 10);
    uint32_t poured = water(ctx, qty, options.pour);
    sassert(ctx, poured >= qty, "post");
  };
}

} // namespace vproof::corpus
