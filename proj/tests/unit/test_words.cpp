#include <doctest.h>

#include <cstdint>
#include <tuple>
#include <set>
#include <vector>

#include "graphon/rng.hpp"
#include "graphon/words.hpp"

using namespace graphon;

TEST_SUITE_BEGIN("words");

TEST_CASE("word validation") {
    CHECK_NOTHROW(Word({3, 1, 2}));
    CHECK_NOTHROW(Word(std::vector<int>{}));
    CHECK_THROWS_AS(Word({1, 2, 1}), DomainError);
    CHECK_THROWS_AS(Word({0, 1}), DomainError);
    CHECK_THROWS_AS(Word({-3}), DomainError);

    const Word w({4, 1, 6});
    CHECK(w.size() == 3);
    CHECK(w.at(1) == 4);
    CHECK(w.at(3) == 6);
    CHECK_THROWS_AS(w.at(0), IndexError);
    CHECK_THROWS_AS(w.at(4), IndexError);
    CHECK(w.max_char() == 6);
    CHECK(w.contains(1));
    CHECK(!w.contains(2));
    CHECK(Word{}.max_char() == 0);
}

TEST_CASE("substitute replaces one position, 1-based") {
    CHECK(substitute(std::vector<int>{7, 8, 9}, 1, 5) == std::vector<int>{5, 8, 9});
    CHECK(substitute(std::vector<int>{7, 8, 9}, 3, 9) == std::vector<int>{7, 8, 9});
    CHECK(substitute(Word({2, 4}), 2, 4) == std::vector<int>{2, 4});
    // Acts on latent vectors too; distinctness is not re-enforced.
    CHECK(substitute(std::vector<double>{0.1, 0.7}, 2, 0.4) ==
          std::vector<double>{0.1, 0.4});
    CHECK(substitute(std::vector<int>{1, 2, 3}, 2, 1) == std::vector<int>{1, 1, 3});
    CHECK_THROWS_AS(substitute(std::vector<int>{1}, 0, 2), IndexError);
    CHECK_THROWS_AS(substitute(std::vector<int>{1}, 2, 2), IndexError);
}

TEST_CASE("subword picks labeled positions") {
    const std::vector<int> beta{5, 3, 8, 1};
    CHECK(subword(beta, Word({2, 4})) == std::vector<int>{3, 1});
    CHECK(subword(beta, Word(std::vector<int>{})) == std::vector<int>{});
    CHECK_THROWS_AS(subword(beta, Word({5})), IndexError);
}

TEST_CASE("word_count is the falling factorial") {
    CHECK(word_count(3, 1) == 3);
    CHECK(word_count(3, 2) == 6);
    CHECK(word_count(4, 3) == 24);
    CHECK(word_count(6, 6) == 720);
    CHECK(word_count(5, 0) == 1);
    CHECK_THROWS_AS(word_count(3, 4), DomainError);
    CHECK_THROWS_AS(word_count(2000, 10), DomainError);  // > 2^63
}

TEST_CASE("enumeration is lexicographic, distinct, complete") {
    WordSequence seq(3, 1);
    std::vector<std::vector<int>> out;
    while (const auto* w = seq.next()) out.push_back(*w);
    CHECK(out == std::vector<std::vector<int>>{{1}, {2}, {3}});

    WordSequence seq2(3, 2);
    out.clear();
    while (const auto* w = seq2.next()) out.push_back(*w);
    CHECK(out.size() == 6);
    CHECK(out.front() == std::vector<int>{1, 2});
    CHECK(out.back() == std::vector<int>{3, 2});

    for (auto [n, k] : {std::pair{4, 3}, {6, 3}, {5, 5}}) {
        WordSequence s(n, k);
        std::set<std::vector<int>> seen;
        std::vector<int> prev;
        std::uint64_t count = 0;
        while (const auto* w = s.next()) {
            ++count;
            CHECK(seen.insert(*w).second);          // distinct words
            CHECK(std::set<int>(w->begin(), w->end()).size() == w->size());  // distinct chars
            if (!prev.empty()) CHECK(prev < *w);    // lexicographic
            prev = *w;
        }
        CHECK(count == word_count(n, k));
    }

    CHECK_THROWS_AS(WordSequence(3, 4), DomainError);
    CHECK_THROWS_AS(WordSequence(0, 0), DomainError);
}

TEST_CASE("reset restarts the stream") {
    WordSequence seq(4, 2);
    seq.next();
    seq.next();
    seq.reset();
    CHECK(*seq.next() == std::vector<int>{1, 2});
}

// Averaging f(beta_ell) over beta in S_{n,p} equals averaging f(alpha) over
// alpha in S_{n,k}: checked as an exact integer identity by summing an
// arbitrary hash-valued f and cross-multiplying the word counts.
TEST_CASE("subword averaging identity") {
    const auto f = [](const std::vector<int>& w) {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (int c : w) h = rng::derive(h, static_cast<std::uint64_t>(c));
        return h >> 32;  // keep sums well below overflow
    };
    const std::vector<std::tuple<int, int, int, int, int>> cases = {
        {6, 3, 2, 3, 1}, {5, 4, 2, 2, 4}, {6, 4, 1, 4, 0}};
    for (auto [n, p, k, l1, l2] : cases) {
        const Word ell = l2 ? Word({l1, l2}) : Word({l1});
        std::uint64_t sum_beta = 0;
        WordSequence betas(n, p);
        while (const auto* beta = betas.next()) sum_beta += f(subword(*beta, ell));
        std::uint64_t sum_alpha = 0;
        WordSequence alphas(n, k);
        while (const auto* alpha = alphas.next()) sum_alpha += f(*alpha);
        CHECK(sum_beta * word_count(n, k) == sum_alpha * word_count(n, p));
    }
}

TEST_SUITE_END();
