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

#ifndef STREAMMT_DECODER_HPP
#define STREAMMT_DECODER_HPP

#include <map>
#include <string>
#include <vector>

#include "streammt/stream.hpp"

namespace streammt {

// Next-token distribution over target vocabulary plus SEP. Sums to one;
// ordered map so iteration order is deterministic.
using Distribution = std::map<std::string, double>;

// Anything that can extend a target prefix one token at a time given the
// visible source context. Implementations must be deterministic functions
// of the two contexts.
class IncrementalDecoder {
 public:
  virtual ~IncrementalDecoder() = default;
  virtual Distribution next_distribution(
      const std::vector<Token>& source_context,
      const std::vector<Token>& target_context) const = 0;
};

}  // namespace streammt

#endif  // STREAMMT_DECODER_HPP
