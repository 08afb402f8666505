#include "graphon/words.hpp"

#include <algorithm>
#include <limits>

namespace graphon {

Word::Word(std::vector<int> chars) : chars_(std::move(chars)) {
    std::vector<int> sorted = chars_;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.front() < 1)
        throw DomainError("Word: characters must be >= 1");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("Word: characters must be pairwise distinct");
}

int Word::at(int pos) const {
    if (pos < 1 || pos > size()) throw IndexError("Word: position out of range");
    return chars_[static_cast<std::size_t>(pos) - 1];
}

int Word::max_char() const {
    if (chars_.empty()) return 0;
    return *std::max_element(chars_.begin(), chars_.end());
}

bool Word::contains(int c) const {
    return std::find(chars_.begin(), chars_.end(), c) != chars_.end();
}

std::vector<int> substitute(const Word& word, int i, int q) {
    return substitute(word.chars(), i, q);
}

std::vector<int> subword(const std::vector<int>& beta, const Word& ell) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(ell.size()));
    for (int pos : ell.chars()) {
        if (pos < 1 || pos > static_cast<int>(beta.size()))
            throw IndexError("subword: position out of range");
        out.push_back(beta[static_cast<std::size_t>(pos) - 1]);
    }
    return out;
}

std::uint64_t word_count(int n, int k) {
    if (n < 0 || k < 0) throw DomainError("word_count: negative argument");
    if (k > n) throw DomainError("word_count: word length exceeds alphabet size");
    std::uint64_t count = 1;
    const std::uint64_t cap = std::uint64_t{1} << 63;
    for (int i = 0; i < k; ++i) {
        std::uint64_t factor = static_cast<std::uint64_t>(n - i);
        if (factor != 0 && count > cap / factor)
            throw DomainError("word_count: count exceeds 2^63");
        count *= factor;
    }
    return count;
}

WordSequence::WordSequence(int n, int k) : n_(n), k_(k) {
    if (n < 1) throw DomainError("WordSequence: alphabet size must be positive");
    if (k < 0) throw DomainError("WordSequence: negative word length");
    if (k > n) throw DomainError("WordSequence: word length exceeds alphabet size");
    word_.reserve(static_cast<std::size_t>(k));
    used_.assign(static_cast<std::size_t>(n), 0);
}

void WordSequence::reset() {
    started_ = false;
    done_ = false;
    word_.clear();
    std::fill(used_.begin(), used_.end(), 0);
}

const std::vector<int>* WordSequence::next() {
    if (done_) return nullptr;
    if (!started_) {
        started_ = true;
        word_.clear();
        for (int c = 1; c <= k_; ++c) {
            word_.push_back(c);
            used_[static_cast<std::size_t>(c) - 1] = 1;
        }
        return &word_;
    }
    // Lexicographic successor: bump the rightmost position that can grow,
    // then refill the tail with the smallest unused characters.
    int i = k_ - 1;
    for (; i >= 0; --i) {
        int old = word_[static_cast<std::size_t>(i)];
        used_[static_cast<std::size_t>(old) - 1] = 0;
        int c = old + 1;
        while (c <= n_ && used_[static_cast<std::size_t>(c) - 1]) ++c;
        if (c <= n_) {
            word_[static_cast<std::size_t>(i)] = c;
            used_[static_cast<std::size_t>(c) - 1] = 1;
            break;
        }
    }
    if (i < 0) {
        done_ = true;
        return nullptr;
    }
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < word_.size(); ++j) {
        int c = 1;
        while (used_[static_cast<std::size_t>(c) - 1]) ++c;
        word_[j] = c;
        used_[static_cast<std::size_t>(c) - 1] = 1;
    }
    return &word_;
}

}  // namespace graphon
