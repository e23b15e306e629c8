#pragma once

#include <string_view>

namespace subs2net {

// Bytewise edit distance (insert/delete/substitute, unit costs).
int levenshtein(std::string_view a, std::string_view b);

// Rounded percentage ratio on two already-prepared strings:
// round(100 * (1 - lev/max_len)), exact integer arithmetic, both empty -> 0.
int ratio_score(std::string_view a, std::string_view b);

// Composite name similarity in [0, 100]. Both inputs are normalized first;
// the score is the max of (i) the full-string ratio, (ii) the ratio over
// alphabetically sorted tokens, and (iii) when one string is more than 1.5x
// the length of the other, the best ratio of the shorter against every
// equal-length window of the longer, scaled by 0.9. Exactly 100 only for
// identical normalized strings (non-exact matches cap at 99); two empty
// strings score 0. Symmetric in its arguments.
int similarity(std::string_view a, std::string_view b);

}  // namespace subs2net
