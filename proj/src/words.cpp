#include "morsecert/words.hpp"

#include "morsecert/errors.hpp"

#include <cctype>

namespace morsecert {

std::string format_word(const Word& w)
{
    std::string s;
    for (int l : w) {
        const char c = static_cast<char>('a' + generator_of(l));
        s.push_back(is_inverse(l) ? static_cast<char>(std::toupper(c)) : c);
    }
    return s;
}

Word parse_word(const std::string& s, int rank)
{
    Word w;
    for (char c : s) {
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        const int g = lower - 'a';
        if (!std::isalpha(static_cast<unsigned char>(c)) || g < 0 || g >= rank)
            throw Error(ErrorKind::InputError, std::string("bad letter '") + c + "' in word " + s);
        w.push_back(2 * g + (std::isupper(static_cast<unsigned char>(c)) ? 1 : 0));
    }
    return w;
}

Word inverse_word(const Word& w)
{
    Word r(w.rbegin(), w.rend());
    for (int& l : r) l = inverse_letter(l);
    return r;
}

bool is_reduced(const Word& w)
{
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == inverse_letter(w[i - 1])) return false;
    return true;
}

std::vector<Word> reduced_words(int rank, int length)
{
    if (rank < 1 || length < 0) throw Error(ErrorKind::InputError, "reduced words need rank >= 1 and length >= 0");
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (int l = 0; l < 2 * rank; ++l) {
            if (!cur.empty() && l == inverse_letter(cur.back())) continue;
            cur.push_back(l);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

long long reduced_word_count(int rank, int length)
{
    if (length == 0) return 1;
    long long c = 2LL * rank;
    for (int i = 1; i < length; ++i) c *= 2LL * rank - 1;
    return c;
}

}  // namespace morsecert
