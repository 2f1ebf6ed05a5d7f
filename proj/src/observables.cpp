// Copyright 2026 The su2mon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "su2mon/observables.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace su2mon {

double mutual_information(const PureState& state, std::span<const int> a, std::span<const int> b) {
  for (int x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) {
      throw std::invalid_argument(fmt::format("mutual_information: qubit {} is in both sets", x));
    }
  }
  if (a.size() + b.size() > static_cast<std::size_t>(kDefaultSubsetCap)) {
    throw std::invalid_argument("mutual_information: |A| + |B| exceeds 12");
  }
  std::vector<int> ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  const double value = subsystem_entropy(state, a) + subsystem_entropy(state, b) - subsystem_entropy(state, ab);
  return value;
}

MutualInfoProfiles mi_profiles(const PureState& state) {
  const int L = state.num_system_qubits();
  if (L < 4) throw std::invalid_argument(fmt::format("mi_profiles: L = {} < 4", L));

  // Reuse the anchor entropies across all profile entries.
  const int anchor1[] = {0};
  const int anchor2[] = {0, 1};
  const double s_anchor1 = subsystem_entropy(state, anchor1);
  const double s_anchor2 = subsystem_entropy(state, anchor2);

  MutualInfoProfiles out;
  for (int k = 1; k < L; ++k) {
    const int b[] = {k};
    const int ab[] = {0, k};
    const double v = s_anchor1 + subsystem_entropy(state, b) - subsystem_entropy(state, ab);
    out.single.push_back({MutualInfoKind::Single, 0, k, v});
  }
  for (int k = 2; k + 1 < L; ++k) {
    const int b[] = {k, k + 1};
    const int ab[] = {0, 1, k, k + 1};
    const double v = s_anchor2 + subsystem_entropy(state, b) - subsystem_entropy(state, ab);
    out.pair.push_back({MutualInfoKind::Pair, 0, k, v});
  }
  return out;
}

}  // namespace su2mon
