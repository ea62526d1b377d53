#include "tritp/setpartitions.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tritp {

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
    SetPartition p;
    p.n = n;
    p.blocks = std::move(blocks);
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    int count = 0;
    for (auto& b : p.blocks) {
        if (b.empty()) throw std::invalid_argument("empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > n || seen[x])
                throw std::invalid_argument("blocks must partition [n]");
            seen[x] = true;
            ++count;
        }
    }
    if (count != n) throw std::invalid_argument("blocks must cover [n]");
    std::sort(p.blocks.begin(), p.blocks.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return p;
}

SetPartition SetPartition::from_rgs(const std::vector<int>& rgs) {
    int n = static_cast<int>(rgs.size());
    int nb = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(nb));
    for (int i = 0; i < n; ++i) blocks[rgs[i]].push_back(i + 1);
    SetPartition p;
    p.n = n;
    p.blocks = std::move(blocks);  // RGS order is already canonical
    return p;
}

int SetPartition::block_index_of(int i) const {
    for (std::size_t b = 0; b < blocks.size(); ++b)
        if (std::binary_search(blocks[b].begin(), blocks[b].end(), i))
            return static_cast<int>(b);
    throw std::out_of_range("element not in partition");
}

int SetPartition::smallest_in_block_of(int i) const {
    return blocks[block_index_of(i)].front();
}

ElementStatus SetPartition::status(int i) const {
    const auto& b = blocks[block_index_of(i)];
    if (b.size() == 1) return ElementStatus::Singleton;
    if (b.front() == i) return ElementStatus::Opener;
    if (b.back() == i) return ElementStatus::Closer;
    return ElementStatus::Insider;
}

std::string SetPartition::bar_string() const {
    std::ostringstream os;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) os << "|";
        for (std::size_t x = 0; x < blocks[b].size(); ++x) {
            if (x) os << ",";
            os << blocks[b][x];
        }
    }
    return os.str();
}

json SetPartition::to_json() const {
    json jb = json::array();
    for (auto& b : blocks) jb.push_back(b);
    return json{{"n", n}, {"blocks", jb}};
}

namespace {

void enumerate_rgs(int n, int pos, int maxused, std::vector<int>& rgs,
                   const std::function<void(const std::vector<int>&)>& fn) {
    if (pos == n) {
        fn(rgs);
        return;
    }
    for (int b = 0; b <= maxused + 1; ++b) {
        rgs[pos] = b;
        enumerate_rgs(n, pos + 1, std::max(maxused, b), rgs, fn);
    }
}

}  // namespace

std::vector<SetPartition> enumerate_partitions(int n, int k) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n >= 1 && (k < 1 || k > n)) return {};
    std::vector<SetPartition> out;
    if (n == 0) {
        if (k == 0) out.push_back(SetPartition{});
        return out;
    }
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    enumerate_rgs(n, 0, -1, rgs, [&](const std::vector<int>& r) {
        if (*std::max_element(r.begin(), r.end()) + 1 == k)
            out.push_back(SetPartition::from_rgs(r));
    });
    return out;
}

void for_each_partition(int n, const std::function<void(const SetPartition&)>& fn) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n == 0) {
        fn(SetPartition{});
        return;
    }
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    enumerate_rgs(n, 0, -1, rgs,
                  [&](const std::vector<int>& r) { fn(SetPartition::from_rgs(r)); });
}

// S(n,k) = S(n-1,k-1) + k S(n-1,k), S(0,0) = 1.
std::vector<std::vector<Int>> stirling_subset_table(int nmax) {
    std::vector<std::vector<Int>> s(static_cast<std::size_t>(nmax) + 1);
    s[0] = {Int(1)};
    for (int n = 1; n <= nmax; ++n) {
        s[n].assign(static_cast<std::size_t>(n) + 1, Int(0));
        for (int k = 1; k <= n; ++k) {
            Int v = s[n - 1][k - 1];
            if (k <= n - 1) v += s[n - 1][k] * k;
            s[n][k] = v;
        }
    }
    return s;
}

namespace {

// Element 1 carries no weight; the product runs over i = 2..n.
Polynomial weight_product(const SetPartition& pi, const Polynomial& w_in_b1,
                          const Polynomial& w_min, const Polynomial& w_other) {
    Polynomial w(w_in_b1.table(), 1);
    for (int i = 2; i <= pi.n; ++i) {
        int s = pi.smallest_in_block_of(i);
        if (s == 1) w *= w_in_b1;
        else if (s == i) w *= w_min;
        else w *= w_other;
    }
    return w;
}

constexpr int kEnumGuard = 10;

}  // namespace

Polynomial weight_i(const SetPartition& pi, const Polynomial& c,
                    const Polynomial& d, const Polynomial& e) {
    return weight_product(pi, e, c, d);
}

Polynomial weight_ii(const SetPartition& pi, const Polynomial& a,
                     const Polynomial& c, const Polynomial& e) {
    return weight_product(pi, c, e, a);
}

Triangle triangle_from_partitions_i(const TablePtr& table, int nmax,
                                    const Polynomial& c, const Polynomial& d,
                                    const Polynomial& e) {
    if (nmax > kEnumGuard)
        throw std::invalid_argument("nmax exceeds exhaustive enumeration guard");
    Triangle t;
    t.table = table;
    t.nmax = nmax;
    t.rows.resize(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n)
        t.rows[n].assign(static_cast<std::size_t>(n) + 1, Polynomial(table, 0));
    for (int n = 0; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k)
            for (const auto& pi : enumerate_partitions(n + 1, k + 1))
                t.rows[n][k] += weight_i(pi, c, d, e);
    return t;
}

Triangle triangle_from_partitions_ii(const TablePtr& table, int nmax,
                                     const Polynomial& a, const Polynomial& c,
                                     const Polynomial& e) {
    if (nmax > kEnumGuard)
        throw std::invalid_argument("nmax exceeds exhaustive enumeration guard");
    Triangle t;
    t.table = table;
    t.nmax = nmax;
    t.rows.resize(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n)
        t.rows[n].assign(static_cast<std::size_t>(n) + 1, Polynomial(table, 0));
    for (int n = 0; n <= nmax; ++n)
        for (int k = 0; k <= n; ++k)
            for (const auto& pi : enumerate_partitions(n + 1, n + 1 - k))
                t.rows[n][k] += weight_ii(pi, a, c, e);
    return t;
}

}  // namespace tritp
