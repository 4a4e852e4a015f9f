#pragma once

#include <string>
#include <vector>

namespace morsecert {

// Letter 2i is generator i, letter 2i+1 its inverse; written a, A, b, B, ...
using Word = std::vector<int>;

inline int inverse_letter(int l) { return l ^ 1; }
inline int generator_of(int l) { return l >> 1; }
inline bool is_inverse(int l) { return (l & 1) != 0; }

std::string format_word(const Word& w);
// Throws InputError on letters outside the first `rank` generators.
Word parse_word(const std::string& s, int rank);
Word inverse_word(const Word& w);
bool is_reduced(const Word& w);

// All reduced words of the given length in lexicographic letter order.
std::vector<Word> reduced_words(int rank, int length);

// Number of reduced words of the given length: 2r(2r-1)^(L-1).
long long reduced_word_count(int rank, int length);

}  // namespace morsecert
