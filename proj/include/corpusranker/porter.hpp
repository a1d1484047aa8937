#pragma once

#include <string>

namespace corpusranker {

// Porter suffix-stripping stemmer, steps 1a through 5b, matching the author's
// reference distribution (which treats words of length <= 2 as unstemmable
// and carries the step-2 amendments bli->ble and logi->log).
// Expects a lowercase token; total for any non-empty string.
std::string porter_stem(std::string token);

}  // namespace corpusranker
