// Copyright 2026 the spinv authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINV_PROPERTIES_HPP
#define SPINV_PROPERTIES_HPP

#include <string>

namespace spinv {

// Which generalized-inverse properties a variant enforces. p1 (AHA = A),
// p3 (AH symmetric) and p4 (HA symmetric) are linear and handled by the LP
// machinery; p2sdp switches on the lifted semidefinite relaxation of
// HAH = H.
struct PropertySet {
  bool p1 = false;
  bool p3 = false;
  bool p4 = false;
  bool p2sdp = false;

  bool operator==(const PropertySet&) const = default;

  std::string name() const {
    std::string s;
    if (p1) s += "p1";
    if (p3) s += s.empty() ? "p3" : "+p3";
    if (p4) s += s.empty() ? "p4" : "+p4";
    if (p2sdp) s += s.empty() ? "p2sdp" : "+p2sdp";
    return s.empty() ? "none" : s;
  }
};

}  // namespace spinv

#endif  // SPINV_PROPERTIES_HPP
