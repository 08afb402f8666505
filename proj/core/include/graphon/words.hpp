#pragma once

#include <cstdint>
#include <vector>

#include "graphon/errors.hpp"

namespace graphon {

// A word with pairwise distinct characters over the alphabet [n] for some n.
// Characters are 1-based; the empty word (k = 0) is valid and plays the role
// of "no labels".
class Word {
public:
    Word() = default;
    explicit Word(std::vector<int> chars);

    int size() const { return static_cast<int>(chars_.size()); }
    bool empty() const { return chars_.empty(); }
    const std::vector<int>& chars() const { return chars_; }

    // 1-based access, matching positions in the definitions.
    int at(int pos) const;

    // Largest character, 0 for the empty word. A word is valid over [n]
    // exactly when max_char() <= n.
    int max_char() const;

    bool contains(int c) const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<int> chars_;
};

// Replaces the character at 1-based position i with q. Distinctness is not
// re-enforced: the substitution operator also acts on vectors of latent
// positions in [0,1], where collisions are a null event.
template <typename T>
std::vector<T> substitute(std::vector<T> word, int i, T q) {
    if (i < 1 || i > static_cast<int>(word.size()))
        throw IndexError("substitute: position out of range");
    word[static_cast<std::size_t>(i) - 1] = q;
    return word;
}

std::vector<int> substitute(const Word& word, int i, int q);

// The subword beta_ell: characters of beta picked at the 1-based positions
// listed in ell.
std::vector<int> subword(const std::vector<int>& beta, const Word& ell);

// n! / (n-k)!, the number of length-k words with distinct characters over
// [n]. Throws DomainError when k > n and on overflow past 2^63.
std::uint64_t word_count(int n, int k);

// Lazy lexicographic enumeration of all distinct-character words of length k
// over [n]. Single consumer; next() returns nullptr once exhausted.
//
//   WordSequence seq(4, 2);
//   while (const std::vector<int>* w = seq.next()) { ... }
class WordSequence {
public:
    WordSequence(int n, int k);

    const std::vector<int>* next();
    void reset();

    std::uint64_t total() const { return word_count(n_, k_); }

private:
    int n_ = 0;
    int k_ = 0;
    bool started_ = false;
    bool done_ = false;
    std::vector<int> word_;
    std::vector<char> used_;  // used_[c-1] for c in [n]
};

}  // namespace graphon
