#include "tvo/fock.hpp"

#include <algorithm>
#include <cassert>

namespace tvo {

int FockState::degree() const {
    int d = 0;
    for (const auto& [m, c] : parts) d += m;
    return d;
}

void FockState::insert_part(int m, int colour) {
    auto it = std::upper_bound(parts.begin(), parts.end(), std::make_pair(m, colour));
    parts.insert(it, {m, colour});
}

bool FockState::operator<(const FockState& o) const {
    int da = degree(), db = o.degree();
    if (da != db) return da < db;
    if (coset != o.coset) return coset < o.coset;
    return parts < o.parts;
}

void FockVector::add(const FockState& s, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
        terms_.emplace(s, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FockVector FockVector::operator+(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [s, v] : o.terms_) r.add(s, v);
    return r;
}

FockVector FockVector::operator-(const FockVector& o) const {
    FockVector r = *this;
    for (const auto& [s, v] : o.terms_) r.add(s, -v);
    return r;
}

FockVector& FockVector::operator+=(const FockVector& o) {
    for (const auto& [s, v] : o.terms_) add(s, v);
    return *this;
}

FockVector FockVector::scaled(const Scalar& s) const {
    FockVector r;
    if (s.is_zero()) return r;
    for (const auto& [st, v] : terms_) r.add(st, v * s);
    return r;
}

FockVector heis_act(int colour, int n, const FockVector& v) {
    assert(n != 0 && n % 2 != 0);
    FockVector out;
    if (n < 0) {
        for (const auto& [s, c] : v.terms()) {
            FockState t = s;
            t.insert_part(-n, colour);
            out.add(t, c);
        }
    } else {
        for (const auto& [s, c] : v.terms()) {
            auto key = std::make_pair(n, colour);
            long mult = std::count(s.parts.begin(), s.parts.end(), key);
            if (mult == 0) continue;
            FockState t = s;
            t.parts.erase(std::find(t.parts.begin(), t.parts.end(), key));
            Rat w(n * mult, 2);
            w.canonicalize();
            out.add(t, c * Scalar::rational(w));
        }
    }
    return out;
}

FockVector group_act(const LatticeVector& alpha, const FockVector& v, const CocycleMutation& mut) {
    FockVector out;
    Coset ca = coset_reduce(alpha);
    int nu = alpha.nu();
    for (const auto& [s, c] : v.terms()) {
        int sign = cocycle(alpha, coset_rep(s.coset, nu), mut);
        FockState t = s;
        t.coset = ca ^ s.coset;
        out.add(t, sign < 0 ? -c : c);
    }
    return out;
}

namespace {

// enumerate colour-decorated odd partitions with parts >= (m0, c0), total <= room
void enumerate_partitions(int nu, int room, std::pair<int, int> minpart,
                          std::vector<std::pair<int, int>>& current,
                          std::vector<std::vector<std::pair<int, int>>>& out) {
    out.push_back(current);
    for (int m = minpart.first; m <= room; m += 2) {
        int cstart = (m == minpart.first) ? minpart.second : 1;
        for (int c = cstart; c <= nu; ++c) {
            current.emplace_back(m, c);
            enumerate_partitions(nu, room - m, {m, c}, current, out);
            current.pop_back();
        }
    }
}

}  // namespace

TruncatedBasis TruncatedBasis::enumerate(int nu, int depth) {
    TruncatedBasis b;
    b.nu_ = nu;
    b.depth_ = depth;
    std::vector<std::vector<std::pair<int, int>>> partitions;
    std::vector<std::pair<int, int>> current;
    enumerate_partitions(nu, depth, {1, 1}, current, partitions);
    for (const auto& parts : partitions) {
        for (Coset c = 0; c < (1u << nu); ++c) b.states_.push_back(FockState{c, parts});
    }
    std::sort(b.states_.begin(), b.states_.end());
    for (int i = 0; i < b.size(); ++i) b.index_.emplace(b.states_[i], i);
    b.degree_begin_.assign(depth + 2, b.size());
    for (int i = b.size(); i-- > 0;) b.degree_begin_[b.states_[i].degree()] = i;
    for (int d = depth; d >= 0; --d)
        b.degree_begin_[d] = std::min(b.degree_begin_[d], b.degree_begin_[d + 1]);
    return b;
}

int TruncatedBasis::index_of(const FockState& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

std::vector<long> odd_partition_counts(int nu, int depth) {
    std::vector<long> ways(depth + 1, 0);
    ways[0] = 1;
    for (int m = 1; m <= depth; m += 2) {
        for (int c = 0; c < nu; ++c) {
            for (int d = m; d <= depth; ++d) ways[d] += ways[d - m];
        }
    }
    return ways;
}

}  // namespace tvo
