#pragma once

// Self-check suite behind `lqi validate`: every module invariant at reduced
// sample counts, reported as a pass/fail table.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lorentzqi/channel.hpp"
#include "lorentzqi/states.hpp"

namespace lqi {

/// Deliberate faults for checking that the suite notices them.
enum class Mutation {
  None,
  FlipS2Sign,  // Verbatim s2 update uses +s1 sin(phi) instead of -s1 sin(phi)
};

std::optional<Mutation> parse_mutation(std::string_view name);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using BlochMap = std::function<BlochState<double>(const BlochState<double>&, double, ChannelMode)>;

/// transform_bloch, with `mutation` applied.
BlochMap channel_under_test(Mutation mutation);

std::vector<CheckResult> run_validation_suite(Mutation mutation = Mutation::None, std::uint64_t seed = 20240601);

/// Print the table; 0 if every check passed, 1 otherwise.
int run_validate(std::ostream& out, Mutation mutation = Mutation::None);

}  // namespace lqi
