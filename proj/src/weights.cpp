#include "hforge/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

namespace hforge {

Weight::Weight(std::vector<std::vector<long>> per_embedding) : lists_(std::move(per_embedding)) {
    for (const auto& l : lists_)
        if (l.size() != n()) throw std::invalid_argument("Weight: embeddings of different length");
}

bool Weight::dominant() const {
    for (const auto& l : lists_)
        for (size_t i = 0; i + 1 < l.size(); ++i)
            if (l[i] < l[i + 1]) return false;
    return true;
}

bool Weight::regular() const {
    for (const auto& l : lists_)
        for (size_t i = 0; i + 1 < l.size(); ++i)
            if (l[i] <= l[i + 1]) return false;
    return true;
}

Weight Weight::contragredient() const {
    std::vector<std::vector<long>> out;
    for (const auto& l : lists_) {
        std::vector<long> c(l.rbegin(), l.rend());
        for (auto& x : c) x = -x;
        out.push_back(c);
    }
    return Weight(std::move(out));
}

Weight Weight::shifted(long t) const {
    auto out = lists_;
    for (auto& l : out)
        for (auto& x : l) x += t;
    return Weight(std::move(out));
}

PurityResult check_purity(const Weight& mu) {
    PurityResult r;
    size_t n = mu.n();
    if (n == 0 || mu.embeddings() == 0) return r;
    r.degenerate_gl1 = n == 1;
    std::optional<long> w;
    for (const auto& l : mu.lists())
        for (size_t i = 0; i < n; ++i) {
            long s = l[i] + l[n - 1 - i];
            if (w && *w != s) return r;
            w = s;
        }
    r.pure = true;
    r.w = w;
    return r;
}

std::vector<std::vector<long>> branch(const std::vector<long>& mu) {
    std::vector<std::vector<long>> out;
    if (mu.size() < 2) {
        out.push_back({});
        return out;
    }
    std::vector<long> cur(mu.size() - 1);
    // depth-first with each coordinate running downwards gives decreasing lexicographic order
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (long x = mu[i]; x >= mu[i + 1]; --x) {
            cur[i] = x;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

long branch_count(const std::vector<long>& mu) {
    long c = 1;
    for (size_t i = 0; i + 1 < mu.size(); ++i) c *= std::max(0L, mu[i] - mu[i + 1] + 1);
    return c;
}

std::vector<long> emb_set(const Weight& nu_weight, const Weight& mu) {
    if (nu_weight.n() + 1 != mu.n()) throw std::invalid_argument("emb_set: need weights of GL_{n-1} and GL_n");
    if (nu_weight.embeddings() != mu.embeddings()) throw std::invalid_argument("emb_set: embedding count mismatch");
    Weight check = nu_weight.contragredient();
    long lo = std::numeric_limits<long>::min(), hi = std::numeric_limits<long>::max();
    for (size_t iota = 0; iota < mu.embeddings(); ++iota) {
        const auto& m = mu.at(iota);
        const auto& c = check.at(iota);
        // m_i >= c_i + nu >= m_{i+1}
        for (size_t i = 0; i < c.size(); ++i) {
            lo = std::max(lo, m[i + 1] - c[i]);
            hi = std::min(hi, m[i] - c[i]);
        }
    }
    std::vector<long> out;
    if (mu.n() == 1) return out;
    for (long x = lo; x <= hi; ++x) out.push_back(x);
    return out;
}

std::vector<std::vector<long>> langlands_parameter(const Weight& mu, long w) {
    long n = static_cast<long>(mu.n());
    std::vector<std::vector<long>> out;
    for (const auto& l : mu.lists()) {
        std::vector<long> p;
        // 2 rho_n = (n-1, n-3, ..., 1-n)
        for (long i = 0; i < n; ++i) p.push_back(2 * l[static_cast<size_t>(i)] + (n - 1 - 2 * i) - w);
        out.push_back(p);
    }
    return out;
}

CriticalData critical_data(const Weight& mu, const Weight& nu) {
    if (!mu.dominant() || !nu.dominant()) throw std::invalid_argument("critical_data: weights must be dominant");
    PurityResult pm = check_purity(mu), pn = check_purity(nu);
    if (!pm.pure) throw std::invalid_argument("critical_data: mu is not pure");
    if (!pn.pure) throw std::invalid_argument("critical_data: nu is not pure");
    CriticalData d;
    d.w = *pm.w;
    d.v = *pn.w;
    d.gl1_flag = pn.degenerate_gl1;
    d.parity_ok = (d.w + d.v) % 2 == 0;
    d.center = Rat(1 + d.w + d.v) / Rat(2);
    d.l = langlands_parameter(mu, d.w);
    d.m = langlands_parameter(nu, d.v);
    bool first = true;
    for (size_t iota = 0; iota < d.l.size(); ++iota)
        for (long a : d.l[iota])
            for (long b : d.m[iota]) {
                long g = std::labs(a - b);
                if (first || g < d.min_gap) d.min_gap = g;
                first = false;
            }
    d.nu_min = Rat(d.w + d.v) / Rat(2) - Rat(d.min_gap) + Rat(1);
    d.s_min = Rat(1, 2) + d.nu_min;
    d.s_max = Rat(1, 2) + Rat(d.w + d.v) - d.nu_min;
    d.emb = emb_set(nu, mu);
    if (!d.emb.empty()) d.nu_min_from_emb = d.emb.front();
    if (d.parity_ok)
        for (long x : d.emb) d.critical_set.push_back(Rat(1, 2) + Rat(x));
    std::vector<Rat> interval;
    if (d.parity_ok && d.nu_min.is_integer())
        for (Rat s = d.s_min; s <= d.s_max; s += Rat(1)) interval.push_back(s);
    d.interval_matches = interval == d.critical_set;
    return d;
}

std::vector<long> random_pure_weight(std::mt19937_64& rng, int n, long bound) {
    if (n < 1) throw std::invalid_argument("random_pure_weight: n must be positive");
    std::uniform_int_distribution<long> wd(-bound / 2, bound / 2);
    for (;;) {
        long w = wd(rng);
        if (n % 2 && w % 2) continue;
        size_t k = static_cast<size_t>(n / 2);
        // top half strictly above w/2, so mirrored entries stay strictly decreasing
        long floor_top = w / 2 + 1 - (w < 0 && w % 2 ? 1 : 0);
        if (2 * floor_top <= w) ++floor_top;
        std::uniform_int_distribution<long> xd(floor_top, floor_top + bound);
        std::set<long, std::greater<>> top;
        while (top.size() < k) top.insert(xd(rng));
        std::vector<long> mu(top.begin(), top.end());
        if (n % 2) mu.push_back(w / 2);
        for (auto it = top.rbegin(); it != top.rend(); ++it) mu.push_back(w - *it);
        return mu;
    }
}

}  // namespace hforge
