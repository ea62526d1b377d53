#pragma once

// Exact sparse multivariate polynomial arithmetic over arbitrary-precision
// integers, with a coefficientwise nonnegativity predicate and simultaneous
// substitution.  Variables live in a shared, append-only VariableTable;
// values from different tables never mix.

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json_fwd.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tritp {

using Int = boost::multiprecision::cpp_int;
using json = nlohmann::json;

// A variable is either a named scalar (one of a,c,d,e,f,g) or a member of
// one of the indexed families a_{i,j,l} (j <= i), e_{i,l}, c_i, e_i.
struct VarDesc {
    enum class Kind { Scalar, FamA, FamE, SeqC, SeqE };

    Kind kind = Kind::Scalar;
    char scalar = 'a';      // Scalar only
    int i = 0, j = 0, l = 0;

    static VarDesc make_scalar(char name);
    static VarDesc fam_a(int i, int j, int l);
    static VarDesc fam_e(int i, int l);
    static VarDesc seq_c(int i);
    static VarDesc seq_e(int i);

    // Throws std::invalid_argument on malformed descriptors
    // (unknown scalar name, negative indices, a_{i,j,l} with j > i).
    void validate() const;

    // "a", "a(1,2,0)", "e(0,1)", "c[3]", "e[3]"
    std::string str() const;
    static VarDesc parse(const std::string& s);

    friend bool operator==(const VarDesc&, const VarDesc&) = default;
    friend auto operator<=>(const VarDesc&, const VarDesc&) = default;
};

class VariableTable {
public:
    static std::shared_ptr<VariableTable> create();

    // Registers the descriptor if new; idempotent.  Thread-safe.
    int intern(const VarDesc& d);
    std::optional<int> find(const VarDesc& d) const;
    const VarDesc& desc(int id) const;
    std::size_t size() const;

private:
    VariableTable() = default;
    mutable std::mutex mu_;
    std::deque<VarDesc> descs_;   // stable references under append
    std::map<VarDesc, int> ids_;
};

using TablePtr = std::shared_ptr<VariableTable>;

// Finitely supported exponent map, sorted by variable id, no zero exponents.
// Empty support is the constant monomial 1.
struct Monomial {
    std::vector<std::pair<int, int>> exps;

    int total_degree() const;
    Monomial operator*(const Monomial& o) const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lexicographic order (degree first, then lex with lower variable
// ids more significant).  Used for canonical term ordering.
struct GrlexLess {
    bool operator()(const Monomial& x, const Monomial& y) const;
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Int, GrlexLess>;

    Polynomial() = default;                       // zero, table-less
    explicit Polynomial(Int c);                   // constant, table-less
    Polynomial(TablePtr table, Int c);
    static Polynomial variable(const TablePtr& table, const VarDesc& d);

    const TablePtr& table() const { return table_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero when absent).
    Int constant_value() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial scale(const Int& c) const;
    Polynomial pow(unsigned e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

    bool is_coeffwise_nonneg() const;
    // Set of total degrees occurring; empty for the zero polynomial.
    std::set<int> degrees() const;

    // Simultaneous substitution of the assigned variable ids; unassigned
    // variables are untouched.  Values must share this table or be constants.
    Polynomial substitute(const std::map<int, Polynomial>& assignment) const;

    std::string str() const;
    json to_json() const;
    // Parses the serialized form, interning variables into `table`.
    static Polynomial from_json(const TablePtr& table, const json& j);

private:
    void prune_zeros();
    void merge_table(const Polynomial& o);
    static void require_compatible(const Polynomial& a, const Polynomial& b);

    TablePtr table_;   // null for plain integer constants
    TermMap terms_;
};

}  // namespace tritp
