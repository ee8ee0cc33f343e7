#pragma once

#include "hforge/rat.hpp"

#include <optional>
#include <random>
#include <vector>

namespace hforge {

// Highest weight per real embedding; each list is mu_1 >= ... >= mu_n.
class Weight {
public:
    Weight() = default;
    Weight(std::vector<long> single) : lists_{std::move(single)} {}  // one embedding
    explicit Weight(std::vector<std::vector<long>> per_embedding);

    size_t n() const { return lists_.empty() ? 0 : lists_.front().size(); }
    size_t embeddings() const { return lists_.size(); }
    const std::vector<long>& at(size_t iota) const { return lists_.at(iota); }
    const std::vector<std::vector<long>>& lists() const { return lists_; }
    bool dominant() const;
    bool regular() const;
    // (-mu_n, ..., -mu_1)
    Weight contragredient() const;
    Weight shifted(long t) const;

    friend bool operator==(const Weight&, const Weight&) = default;

private:
    std::vector<std::vector<long>> lists_;
};

struct PurityResult {
    bool pure = false;
    std::optional<long> w;
    bool degenerate_gl1 = false;  // n = 1: w read as 2 mu_1
};

PurityResult check_purity(const Weight& mu);

// Interlacing weights mu_i >= mu*_i >= mu_{i+1}, in decreasing lexicographic order.
std::vector<std::vector<long>> branch(const std::vector<long>& mu);
// prod_{i<n} (mu_i - mu_{i+1} + 1)
long branch_count(const std::vector<long>& mu);

// {nu : nu_check + nu interlaces mu at every embedding}, nu_check the contragredient of nu_weight;
// returned as the increasing list of its members.
std::vector<long> emb_set(const Weight& nu_weight, const Weight& mu);

// l = 2 (mu + rho_n) - (w), per embedding.
std::vector<std::vector<long>> langlands_parameter(const Weight& mu, long w);

struct CriticalData {
    long w = 0, v = 0;
    bool parity_ok = false;
    bool gl1_flag = false;
    Rat center;  // (1 + w + v) / 2
    std::vector<std::vector<long>> l, m;
    long min_gap = 0;  // min |l_i - m_j| over i, j and embeddings
    Rat nu_min;        // (w + v)/2 - min_gap + 1
    Rat s_min, s_max;  // 1/2 + nu_min, 1/2 + w + v - nu_min
    std::vector<long> emb;
    std::vector<Rat> critical_set;  // {1/2 + nu : nu in Emb} when the parity condition holds
    std::optional<long> nu_min_from_emb;  // smallest member of Emb
    // critical_set == [s_min, s_max] cap (1/2 + Z)
    bool interval_matches = false;
};

// Throws std::invalid_argument if a weight is not dominant and pure.
CriticalData critical_data(const Weight& mu, const Weight& nu);

// Pure regular dominant weight of length n with entries roughly in [-bound, bound].
std::vector<long> random_pure_weight(std::mt19937_64& rng, int n, long bound = 8);

}  // namespace hforge
