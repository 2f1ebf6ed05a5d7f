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

#pragma once

#include <span>
#include <vector>

#include "su2mon/spin_core.hpp"

namespace su2mon {

/// I(A:B) = S(rho_A) + S(rho_B) - S(rho_AB), in nats. A and B are disjoint
/// qubit sets with |A| + |B| <= 12.
double mutual_information(const PureState& state, std::span<const int> a, std::span<const int> b);

enum class MutualInfoKind { Single, Pair };

/// Sites are 0-based anchors: (j, k) for Single, pairs (j, j+1) and (k, k+1) for Pair.
struct MutualInfoSample {
  MutualInfoKind kind = MutualInfoKind::Single;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

struct MutualInfoProfiles {
  std::vector<MutualInfoSample> single;  ///< I1 between site 0 and k = 1..L-1
  std::vector<MutualInfoSample> pair;    ///< I2 between (0,1) and (k,k+1), k = 2..L-2
};

/// Requires L >= 4. Pair anchors stop at k = L-2 so (k, k+1) never wraps.
MutualInfoProfiles mi_profiles(const PureState& state);

}  // namespace su2mon
