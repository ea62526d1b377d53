#include "tritp/bijection.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tritp {

std::vector<int> total_order(const SetPartition& pi) {
    if (pi.n < 1) throw std::invalid_argument("total_order needs a partition of [n], n >= 1");
    const auto& b1 = pi.blocks.front();
    std::vector<int> base = b1;
    for (std::size_t b = 1; b < pi.blocks.size(); ++b)
        base.push_back(pi.blocks[b].back());
    std::sort(base.begin(), base.end());
    // Insert the non-maximal elements of each non-first block immediately
    // before that block's largest element.
    for (std::size_t b = 1; b < pi.blocks.size(); ++b) {
        const auto& blk = pi.blocks[b];
        if (blk.size() < 2) continue;
        auto at = std::find(base.begin(), base.end(), blk.back());
        base.insert(at, blk.begin(), blk.end() - 1);
    }
    return base;
}

Word word_of_partition(const SetPartition& pi) {
    int n = pi.n - 1;
    std::vector<int> p = total_order(pi);   // p[0] = 1, p[n] = n+1
    std::vector<int> l(static_cast<std::size_t>(n) + 1, 0);
    for (int i = n; i >= 2; --i)
        l[i - 1] = l[i] + (pi.smallest_in_block_of(p[i]) == p[i] ? 0 : 1);
    const auto& b1 = pi.blocks.front();
    Word w;
    w.reserve(static_cast<std::size_t>(n));
    for (int i = n; i >= 1; --i) {
        int s = pi.smallest_in_block_of(p[i]);
        if (s == p[i]) {
            w.push_back(VarDesc::fam_e(i - 1, l[i]));
        } else if (std::binary_search(b1.begin(), b1.end(), p[i])) {
            w.push_back(VarDesc::fam_a(i - 1, 0, l[i]));
        } else {
            // j such that p[i-1] is the jth largest of {p_1,...,p_{i-1}}.
            if (i == 1)
                throw std::logic_error("non-minimal non-B1 element at position 1");
            int j = 0;
            for (int t = 1; t <= i - 1; ++t)
                if (p[t] >= p[i - 1]) ++j;
            w.push_back(VarDesc::fam_a(i - 1, j, l[i]));
        }
    }
    return w;
}

WordValidation validate_word(const Word& w, int n, int k) {
    auto fail = [](int cond, std::size_t pos, std::string msg) {
        return WordValidation{false, cond, pos, std::move(msg)};
    };
    if (n < 0 || k < 0 || k > n)
        return fail(0, 0, "parameters require 0 <= k <= n");
    if (static_cast<int>(w.size()) != n)
        return fail(0, 0, "word length must equal n");
    if (n == 0) return {};
    for (std::size_t t = 0; t < w.size(); ++t)
        if (w[t].kind != VarDesc::Kind::FamA && w[t].kind != VarDesc::Kind::FamE)
            return fail(0, t, "letters must come from the a/e alphabet");

    const VarDesc& first = w.front();
    if (first.i != n - 1 || first.l != 0)
        return fail(1, 0, "first letter must be e(n-1,0) or a(n-1,j,0)");

    const VarDesc& last = w.back();
    bool last_ok = (last.kind == VarDesc::Kind::FamE && last.i == 0 && last.l == k) ||
                   (last.kind == VarDesc::Kind::FamA && k >= 1 && last.i == 0 &&
                    last.j == 0 && last.l == k - 1);
    if (!last_ok)
        return fail(2, w.size() - 1, "last letter must be e(0,k) or a(0,0,k-1)");

    for (std::size_t t = 0; t + 1 < w.size(); ++t) {
        const VarDesc& cur = w[t];
        const VarDesc& nxt = w[t + 1];
        if (cur.kind == VarDesc::Kind::FamA) {
            bool ok = nxt.i == cur.i - 1 && nxt.l == cur.l + 1 &&
                      (nxt.kind == VarDesc::Kind::FamE ||
                       (nxt.kind == VarDesc::Kind::FamA && nxt.j >= cur.j));
            if (!ok)
                return fail(3, t + 1,
                            "letter after a(i,j,l) must be e(i-1,l+1) or "
                            "a(i-1,j',l+1) with j <= j' <= i-1");
        } else {
            bool ok = nxt.i == cur.i - 1 && nxt.l == cur.l &&
                      (nxt.kind == VarDesc::Kind::FamE ||
                       nxt.kind == VarDesc::Kind::FamA);
            if (!ok)
                return fail(4, t + 1,
                            "letter after e(i,l) must be e(i-1,l) or a(i-1,j,l)");
        }
    }
    return {};
}

SetPartition partition_of_word(const Word& w, int n, int k) {
    WordValidation v = validate_word(w, n, k);
    if (!v.ok) {
        std::ostringstream os;
        os << "invalid word (condition " << v.condition << " at position "
           << v.position << "): " << v.message;
        throw std::invalid_argument(os.str());
    }
    if (n == 0) return SetPartition::from_blocks(1, {{1}});

    std::vector<int> avail;   // [2, n+1], shrinking
    for (int x = 2; x <= n + 1; ++x) avail.push_back(x);
    auto take_largest = [&] {
        int q = avail.back();
        avail.pop_back();
        return q;
    };
    auto take_jth_largest = [&](int j) {
        std::size_t idx = avail.size() - static_cast<std::size_t>(j);
        int q = avail.at(idx);
        avail.erase(avail.begin() + static_cast<std::ptrdiff_t>(idx));
        return q;
    };

    std::vector<int> b1{1};
    std::vector<std::vector<int>> others;
    std::optional<std::size_t> unfinished;  // the proof's invariant: at most one

    for (int i = n; i >= 1; --i) {
        std::size_t pos = static_cast<std::size_t>(n - i);
        int q;
        if (i == n) {
            q = n + 1;
            avail.pop_back();
        } else {
            const VarDesc& prev = w[pos - 1];
            if (prev.kind == VarDesc::Kind::FamA && prev.j > 0)
                q = take_jth_largest(prev.j);
            else
                q = take_largest();
        }
        const VarDesc& cur = w[pos];
        if (cur.kind == VarDesc::Kind::FamE) {
            if (unfinished) {
                others[*unfinished].push_back(q);   // opener
                unfinished.reset();
            } else {
                others.push_back({q});              // singleton
            }
        } else if (cur.j == 0) {
            if (unfinished)
                throw std::logic_error("unfinished block while inserting into B1");
            b1.push_back(q);
        } else {
            if (unfinished) {
                others[*unfinished].push_back(q);   // insider
            } else {
                others.push_back({q});              // closer, block stays open
                unfinished = others.size() - 1;
            }
        }
    }
    if (unfinished) throw std::logic_error("word left an unfinished block");

    std::vector<std::vector<int>> blocks;
    blocks.push_back(std::move(b1));
    for (auto& b : others) blocks.push_back(std::move(b));
    SetPartition pi = SetPartition::from_blocks(n + 1, std::move(blocks));
    if (pi.block_count() != n - k + 1)
        throw std::logic_error("reconstructed partition has wrong block count");
    return pi;
}

Polynomial word_weight(const TablePtr& table, const Word& w) {
    Polynomial p(table, 1);
    for (const auto& d : w) p *= Polynomial::variable(table, d);
    return p;
}

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t) os << " ";
        os << w[t].str();
    }
    return os.str();
}

Word word_from_string(const std::string& s) {
    Word w;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) w.push_back(VarDesc::parse(tok));
    return w;
}

json word_to_json(const Word& w) {
    json out = json::array();
    for (const auto& d : w) out.push_back(d.str());
    return out;
}

Word word_from_json(const json& j) {
    Word w;
    for (const auto& s : j) w.push_back(VarDesc::parse(s.get<std::string>()));
    return w;
}

}  // namespace tritp
