#include "tritp/polyring.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tritp {

// ---------------------------------------------------------------- VarDesc

VarDesc VarDesc::make_scalar(char name) {
    VarDesc d;
    d.kind = Kind::Scalar;
    d.scalar = name;
    d.validate();
    return d;
}

VarDesc VarDesc::fam_a(int i, int j, int l) {
    VarDesc d;
    d.kind = Kind::FamA;
    d.i = i; d.j = j; d.l = l;
    d.validate();
    return d;
}

VarDesc VarDesc::fam_e(int i, int l) {
    VarDesc d;
    d.kind = Kind::FamE;
    d.i = i; d.l = l;
    d.validate();
    return d;
}

VarDesc VarDesc::seq_c(int i) {
    VarDesc d;
    d.kind = Kind::SeqC;
    d.i = i;
    d.validate();
    return d;
}

VarDesc VarDesc::seq_e(int i) {
    VarDesc d;
    d.kind = Kind::SeqE;
    d.i = i;
    d.validate();
    return d;
}

void VarDesc::validate() const {
    switch (kind) {
        case Kind::Scalar: {
            static const std::string names = "acdefg";
            if (names.find(scalar) == std::string::npos)
                throw std::invalid_argument("unknown scalar variable name");
            break;
        }
        case Kind::FamA:
            if (i < 0 || j < 0 || l < 0)
                throw std::invalid_argument("negative index in a(i,j,l)");
            if (j > i)
                throw std::invalid_argument("a(i,j,l) requires j <= i");
            break;
        case Kind::FamE:
            if (i < 0 || l < 0)
                throw std::invalid_argument("negative index in e(i,l)");
            break;
        case Kind::SeqC:
        case Kind::SeqE:
            if (i < 0)
                throw std::invalid_argument("negative sequence index");
            break;
    }
}

std::string VarDesc::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Scalar: os << scalar; break;
        case Kind::FamA:   os << "a(" << i << "," << j << "," << l << ")"; break;
        case Kind::FamE:   os << "e(" << i << "," << l << ")"; break;
        case Kind::SeqC:   os << "c[" << i << "]"; break;
        case Kind::SeqE:   os << "e[" << i << "]"; break;
    }
    return os.str();
}

VarDesc VarDesc::parse(const std::string& s) {
    auto bad = [&] { throw std::invalid_argument("bad variable descriptor: " + s); };
    if (s.size() == 1) return make_scalar(s[0]);
    auto nums = [&](std::size_t open, char close) {
        std::vector<int> out;
        if (s.back() != close) bad();
        std::string body = s.substr(open + 1, s.size() - open - 2);
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ','))
            out.push_back(std::stoi(tok));
        return out;
    };
    if (s.size() > 2 && s[1] == '(') {
        auto v = nums(1, ')');
        if (s[0] == 'a' && v.size() == 3) return fam_a(v[0], v[1], v[2]);
        if (s[0] == 'e' && v.size() == 2) return fam_e(v[0], v[1]);
        bad();
    }
    if (s.size() > 2 && s[1] == '[') {
        auto v = nums(1, ']');
        if (v.size() != 1) bad();
        if (s[0] == 'c') return seq_c(v[0]);
        if (s[0] == 'e') return seq_e(v[0]);
        bad();
    }
    bad();
    return {};
}

// ---------------------------------------------------------- VariableTable

std::shared_ptr<VariableTable> VariableTable::create() {
    return std::shared_ptr<VariableTable>(new VariableTable());
}

int VariableTable::intern(const VarDesc& d) {
    d.validate();
    std::lock_guard lk(mu_);
    auto it = ids_.find(d);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(descs_.size());
    descs_.push_back(d);
    ids_.emplace(d, id);
    return id;
}

std::optional<int> VariableTable::find(const VarDesc& d) const {
    std::lock_guard lk(mu_);
    auto it = ids_.find(d);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

const VarDesc& VariableTable::desc(int id) const {
    std::lock_guard lk(mu_);
    return descs_.at(static_cast<std::size_t>(id));
}

std::size_t VariableTable::size() const {
    std::lock_guard lk(mu_);
    return descs_.size();
}

// --------------------------------------------------------------- Monomial

int Monomial::total_degree() const {
    int d = 0;
    for (auto& [id, e] : exps) d += e;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.exps.reserve(exps.size() + o.exps.size());
    std::size_t a = 0, b = 0;
    while (a < exps.size() && b < o.exps.size()) {
        if (exps[a].first < o.exps[b].first) r.exps.push_back(exps[a++]);
        else if (exps[a].first > o.exps[b].first) r.exps.push_back(o.exps[b++]);
        else {
            r.exps.emplace_back(exps[a].first, exps[a].second + o.exps[b].second);
            ++a; ++b;
        }
    }
    for (; a < exps.size(); ++a) r.exps.push_back(exps[a]);
    for (; b < o.exps.size(); ++b) r.exps.push_back(o.exps[b]);
    return r;
}

bool GrlexLess::operator()(const Monomial& x, const Monomial& y) const {
    int dx = x.total_degree(), dy = y.total_degree();
    if (dx != dy) return dx < dy;
    // Lexicographic on the exponent sequence over ascending variable ids;
    // a positive exponent on a smaller id wins.
    std::size_t a = 0, b = 0;
    while (a < x.exps.size() && b < y.exps.size()) {
        if (x.exps[a].first < y.exps[b].first) return false;  // x bigger
        if (x.exps[a].first > y.exps[b].first) return true;
        if (x.exps[a].second != y.exps[b].second)
            return x.exps[a].second < y.exps[b].second;
        ++a; ++b;
    }
    if (a < x.exps.size()) return false;
    if (b < y.exps.size()) return true;
    return false;
}

// ------------------------------------------------------------- Polynomial

Polynomial::Polynomial(Int c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

Polynomial::Polynomial(TablePtr table, Int c) : table_(std::move(table)) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

Polynomial Polynomial::variable(const TablePtr& table, const VarDesc& d) {
    if (!table) throw std::invalid_argument("variable() requires a table");
    int id = table->intern(d);
    Polynomial p;
    p.table_ = table;
    Monomial m;
    m.exps.emplace_back(id, 1);
    p.terms_.emplace(std::move(m), Int(1));
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.exps.empty());
}

Int Polynomial::constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Int(0) : it->second;
}

void Polynomial::require_compatible(const Polynomial& a, const Polynomial& b) {
    if (a.table_ && b.table_ && a.table_ != b.table_)
        throw std::invalid_argument("polynomials over different variable tables");
}

void Polynomial::merge_table(const Polynomial& o) {
    if (!table_) table_ = o.table_;
}

void Polynomial::prune_zeros() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_compatible(*this, o);
    merge_table(o);
    for (auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_compatible(*this, o);
    merge_table(o);
    for (auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.emplace(m, -c);
        if (!fresh) {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_compatible(*this, o);
    Polynomial r;
    r.table_ = table_ ? table_ : o.table_;
    for (auto& [ma, ca] : terms_)
        for (auto& [mb, cb] : o.terms_) {
            Monomial m = ma * mb;
            auto [it, fresh] = r.terms_.emplace(std::move(m), ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    r.prune_zeros();
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
    *this = *this * o;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Polynomial Polynomial::scale(const Int& c) const {
    Polynomial r;
    r.table_ = table_;
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, cc] : r.terms_) cc *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r(table_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1u) r *= base;
        e >>= 1u;
        if (e) base *= base;
    }
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_compatible(a, b);
    return a.terms_ == b.terms_;
}

bool Polynomial::is_coeffwise_nonneg() const {
    for (auto& [m, c] : terms_)
        if (c < 0) return false;
    return true;
}

std::set<int> Polynomial::degrees() const {
    std::set<int> out;
    for (auto& [m, c] : terms_) out.insert(m.total_degree());
    return out;
}

Polynomial Polynomial::substitute(const std::map<int, Polynomial>& assignment) const {
    for (auto& [id, v] : assignment) require_compatible(*this, v);
    std::map<std::pair<int, int>, Polynomial> powcache;
    Polynomial out;
    out.table_ = table_;
    for (auto& [m, c] : terms_) {
        Polynomial term(table_, c);
        for (auto& [id, e] : m.exps) {
            auto it = assignment.find(id);
            if (it == assignment.end()) {
                Monomial vm;
                vm.exps.emplace_back(id, e);
                Polynomial v;
                v.table_ = table_;
                v.terms_.emplace(std::move(vm), Int(1));
                term *= v;
            } else {
                auto key = std::make_pair(id, e);
                auto pit = powcache.find(key);
                if (pit == powcache.end())
                    pit = powcache.emplace(key, it->second.pow(static_cast<unsigned>(e))).first;
                term *= pit->second;
            }
        }
        out += term;
    }
    return out;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // leading term first
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Int ab = c < 0 ? Int(-c) : c;
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        bool needcoeff = ab != 1 || m.exps.empty();
        if (needcoeff) os << ab.str();
        bool firstv = !needcoeff;
        for (auto& [id, e] : m.exps) {
            if (!firstv) os << "*";
            firstv = false;
            os << (table_ ? table_->desc(id).str() : std::to_string(id));
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

json Polynomial::to_json() const {
    // Variables restricted to the support, listed by ascending table id so
    // the round-trip through a fresh table is byte-stable.
    std::set<int> used;
    for (auto& [m, c] : terms_)
        for (auto& [id, e] : m.exps) used.insert(id);
    std::map<int, int> local;
    json vars = json::array();
    for (int id : used) {
        local[id] = static_cast<int>(vars.size());
        vars.push_back(table_->desc(id).str());
    }
    json terms = json::array();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        json mono = json::array();
        for (auto& [id, e] : it->first.exps)
            mono.push_back(json::array({local.at(id), e}));
        terms.push_back(json::array({mono, it->second.str()}));
    }
    return json{{"vars", vars}, {"terms", terms}};
}

Polynomial Polynomial::from_json(const TablePtr& table, const json& j) {
    if (!table) throw std::invalid_argument("from_json requires a table");
    std::vector<int> ids;
    for (auto& v : j.at("vars"))
        ids.push_back(table->intern(VarDesc::parse(v.get<std::string>())));
    Polynomial p;
    p.table_ = table;
    for (auto& t : j.at("terms")) {
        Monomial m;
        for (auto& pairjson : t.at(0))
            m.exps.emplace_back(ids.at(pairjson.at(0).get<std::size_t>()),
                                pairjson.at(1).get<int>());
        std::sort(m.exps.begin(), m.exps.end());
        Int c(t.at(1).get<std::string>());
        if (c == 0) throw std::invalid_argument("zero coefficient in serialized polynomial");
        if (!p.terms_.emplace(std::move(m), std::move(c)).second)
            throw std::invalid_argument("duplicate monomial in serialized polynomial");
    }
    return p;
}

}  // namespace tritp
