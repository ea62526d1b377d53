// tritp: combinatorial triangle generation, planar-network realizations,
// the partition <-> path-word bijection, and exact coefficientwise
// total-positivity certification.
//
// Exit codes for `check`: 0 certified, 1 refuted, 2 partial; any usage or
// runtime error exits > 2.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tritp/bijection.hpp"
#include "tritp/network.hpp"
#include "tritp/polyring.hpp"
#include "tritp/setpartitions.hpp"
#include "tritp/tpcheck.hpp"
#include "tritp/triangles.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tritp;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitPartial = 2;
constexpr int kExitError = 3;
constexpr int kExitMismatch = 4;

// ------------------------------------------------------------ parameters

// Comma-separated name=value bindings; value is an integer or the name of
// a scalar symbol.  Unbound names stay symbolic.
std::map<char, Polynomial> parse_params(const TablePtr& table,
                                        const std::string& bindings,
                                        const std::string& names) {
    std::map<char, Polynomial> out;
    for (char n : names)
        out.emplace(n, Polynomial::variable(table, VarDesc::make_scalar(n)));
    std::istringstream is(bindings);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos || eq != 1 || names.find(item[0]) == std::string::npos)
            throw std::invalid_argument("bad parameter binding '" + item +
                                        "' (expect name=value with name in '" +
                                        names + "')");
        std::string val = item.substr(eq + 1);
        if (val.empty()) throw std::invalid_argument("empty value in '" + item + "'");
        std::size_t digits_from = val[0] == '-' ? 1 : 0;
        bool numeric = val.size() > digits_from &&
                       val.find_first_not_of("0123456789", digits_from) ==
                           std::string::npos;
        if (numeric)
            out.at(item[0]) = Polynomial(table, Int(val));
        else if (val.size() == 1)
            out.at(item[0]) =
                Polynomial::variable(table, VarDesc::make_scalar(val[0]));
        else
            throw std::invalid_argument("value must be an integer or a symbol: '" +
                                        val + "'");
    }
    return out;
}

json params_json(const std::string& bindings) {
    json out = json::object();
    std::istringstream is(bindings);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto eq = item.find('=');
        if (eq != std::string::npos) out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

// ------------------------------------------------------------- families

Triangle planted_negative(const TablePtr& table) {
    Triangle t;
    t.table = table;
    t.nmax = 2;
    for (auto& row : {std::vector<long>{1}, {1, 2}, {3, 1, 1}}) {
        std::vector<Polynomial> r;
        for (long v : row) r.emplace_back(table, v);
        t.rows.push_back(std::move(r));
    }
    return t;
}

Triangle build_family(const TablePtr& table, const std::string& family,
                      const std::string& params, int nmax) {
    if (family == "eulerian") return gen_eulerian(table, nmax);
    if (family == "revstirling") return gen_rev_stirling(table, nmax);
    if (family == "general4") {
        auto p = parse_params(table, params, "acde");
        return gen_general4(table, nmax, p.at('a'), p.at('c'), p.at('d'), p.at('e'));
    }
    if (family == "general6") {
        auto p = parse_params(table, params, "acdefg");
        return gen_general6(table, nmax, p.at('a'), p.at('c'), p.at('d'),
                            p.at('e'), p.at('f'), p.at('g'));
    }
    if (family == "ace-seq") {
        auto p = parse_params(table, params, "a");
        std::vector<Polynomial> cs, es;
        for (int i = 0; i < nmax; ++i) {
            cs.push_back(Polynomial::variable(table, VarDesc::seq_c(i)));
            es.push_back(Polynomial::variable(table, VarDesc::seq_e(i)));
        }
        return gen_ace_seq(table, nmax, p.at('a'), cs, es);
    }
    if (family == "planted-negative") {
        if (nmax > 2)
            throw std::invalid_argument("planted-negative has only rows 0..2");
        return planted_negative(table);
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

// ---------------------------------------------------------- subcommands

int cmd_triangle(const std::string& family, const std::string& params,
                 int nmax, const std::string& format) {
    auto table = VariableTable::create();
    Triangle t = build_family(table, family, params, nmax);
    if (format == "csv")
        std::cout << t.to_csv();
    else if (format == "text")
        std::cout << t.to_text();
    else if (format == "json")
        std::cout << t.to_json(family, params_json(params)).dump(2) << "\n";
    else
        throw std::invalid_argument("unknown format '" + format + "'");
    return kExitOk;
}

int cmd_check(const std::string& family, const std::string& params, int N,
              const CheckOptions& opts, bool do_resume) {
    auto table = VariableTable::create();
    int nmax = family == "planted-negative" ? 2 : N - 1;
    Triangle t = build_family(table, family, params, nmax);
    TPReport rep;
    if (do_resume) {
        if (opts.checkpoint_path.empty())
            throw std::invalid_argument("--resume requires --checkpoint");
        CheckOptions eff = opts;
        eff.checkpoint_path.clear();  // resume appends to the existing file
        rep = resume(opts.checkpoint_path, t, N, eff);
    } else {
        rep = check_total_positivity(t, N, opts);
    }
    std::cout << rep.full().dump(2) << "\n";
    switch (rep.status) {
        case TPStatus::Certified: return kExitOk;
        case TPStatus::Refuted: return kExitRefuted;
        case TPStatus::Partial: return kExitPartial;
    }
    return kExitError;
}

struct SuiteResult {
    int checks = 0;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        ++checks;
        if (cond) return;
        ok = false;
        std::cout << "MISMATCH: " << what << "\n";
    }
};

int cmd_crosscheck(const std::string& suite, int nmax, int minor_size) {
    auto table = VariableTable::create();
    auto var = [&](char ch) {
        return Polynomial::variable(table, VarDesc::make_scalar(ch));
    };
    Polynomial a = var('a'), c = var('c'), d = var('d'), e = var('e'),
               f = var('f'), g = var('g');
    Polynomial zero(table, 0);
    SuiteResult res;

    if (suite == "prop21") {
        res.expect(same_entries(triangle_from_partitions_i(table, nmax, c, d, e),
                                gen_general4(table, nmax, zero, c, d, e)),
                   "partition variant (i) vs recurrence");
        res.expect(same_entries(triangle_from_partitions_ii(table, nmax, a, c, e),
                                gen_general4(table, nmax, a, c, zero, e)),
                   "partition variant (ii) vs recurrence");
    } else if (suite == "lemma22") {
        res.expect(same_entries(gen_alt_i(table, nmax, c, d, e),
                                gen_general4(table, nmax, zero, c, d, e)),
                   "alternate recurrence (i)");
        res.expect(same_entries(gen_alt_ii(table, nmax, a, c, e),
                                gen_general4(table, nmax, a, c, zero, e)),
                   "alternate recurrence (ii)");
    } else if (suite == "reversal") {
        Triangle t = gen_general6(table, nmax, a, c, d, e, f, g);
        res.expect(same_entries(reverse(t),
                                gen_general6(table, nmax, d, e, a, c, f, g)),
                   "six-parameter reversal");
    } else if (suite == "thm33") {
        PlanarNetwork net = build_Dprime(table, nmax);
        Triangle spec = specialize_ace(path_matrix(net, nmax), a, c, e);
        res.expect(same_entries(spec, gen_general4(table, nmax, a, c, zero, e)),
                   "specialized path matrix vs recurrence");
    } else if (suite == "census") {
        PlanarNetwork net = build_Dprime(table, nmax);
        auto s = stirling_subset_table(nmax + 1);
        for (int n = 0; n <= nmax; ++n)
            for (int k = 0; k <= n; ++k) {
                std::ostringstream what;
                what << "path census at (" << n << "," << k << ")";
                res.expect(Int(count_paths(net, net.source(n), net.sink(k))) ==
                               s[n + 1][n + 1 - k],
                           what.str());
            }
    } else if (suite == "bijection") {
        for (int n = 0; n <= nmax; ++n)
            for (int k = 0; k <= n; ++k) {
                std::size_t count = 0;
                bool round = true, valid = true;
                for (auto& pi : enumerate_partitions(n + 1, n + 1 - k)) {
                    ++count;
                    Word w = word_of_partition(pi);
                    valid = valid && validate_word(w, n, k).ok;
                    round = round && partition_of_word(w, n, k).blocks == pi.blocks;
                }
                std::ostringstream what;
                what << "(n,k)=(" << n << "," << k << ") |Pi|=" << count;
                res.expect(valid, "word validity at " + what.str());
                res.expect(round, "round trip at " + what.str());
                std::cout << "ok: " << what.str() << "\n";
            }
    } else if (suite == "lgv") {
        PlanarNetwork net = build_Dprime(table, nmax);
        Triangle pm = path_matrix(net, nmax);
        for (auto& spec : enumerate_minors(nmax + 1, 1, minor_size)) {
            bool eq = minor_det(pm, spec) ==
                      lgv_family_sum(net, spec.rows, spec.cols);
            if (!eq) {
                std::ostringstream what;
                what << "LGV minor rows={";
                for (int r : spec.rows) what << r << " ";
                what << "} cols={";
                for (int cidx : spec.cols) what << cidx << " ";
                what << "}";
                res.expect(false, what.str());
            } else {
                ++res.checks;
            }
        }
    } else {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }

    std::cout << (res.ok ? "pass" : "fail") << ": suite " << suite << " ("
              << res.checks << " checks, nmax " << nmax << ")\n";
    return res.ok ? kExitOk : kExitMismatch;
}

int cmd_network(const std::string& which, int nmax, const std::string& format) {
    auto table = VariableTable::create();
    PlanarNetwork net = which == "Dprime" ? build_Dprime(table, nmax)
                        : which == "D"    ? build_D_stirling(table, nmax)
                                          : throw std::invalid_argument(
                                                "unknown network '" + which + "'");
    if (format == "dot")
        std::cout << net.to_dot();
    else if (format == "json")
        std::cout << net.to_json().dump(2) << "\n";
    else if (format == "matrix")
        std::cout << path_matrix(net, net.max_source_index())
                         .to_json(which + "-path-matrix", json::object())
                         .dump(2)
                  << "\n";
    else
        throw std::invalid_argument("unknown format '" + format + "'");
    return kExitOk;
}

SetPartition parse_partition(const std::string& s) {
    std::vector<std::vector<int>> blocks;
    std::istringstream is(s);
    std::string blk;
    int n = 0;
    while (std::getline(is, blk, '|')) {
        std::vector<int> b;
        std::istringstream bs(blk);
        std::string tok;
        while (std::getline(bs, tok, ',')) {
            b.push_back(std::stoi(tok));
            n = std::max(n, b.back());
        }
        blocks.push_back(std::move(b));
    }
    return SetPartition::from_blocks(n, blocks);
}

int cmd_bijection(const std::string& word_str, const std::string& partition_str,
                  int n, int k) {
    auto table = VariableTable::create();
    if (!word_str.empty()) {
        Word w = word_from_string(word_str);
        SetPartition pi = partition_of_word(w, n, k);
        std::cout << "partition: " << pi.bar_string() << "\n";
        std::cout << "weight: " << word_weight(table, w).str() << "\n";
        return kExitOk;
    }
    if (!partition_str.empty()) {
        SetPartition pi = parse_partition(partition_str);
        auto order = total_order(pi);
        Word w = word_of_partition(pi);
        std::cout << "order:";
        for (int x : order) std::cout << " " << x;
        std::cout << "\n";
        std::cout << "word: " << word_to_string(w) << "\n";
        std::cout << "n: " << pi.n - 1 << "\nk: " << pi.n - pi.block_count()
                  << "\n";
        return kExitOk;
    }
    throw std::invalid_argument("need --word or --partition");
}

int default_jobs() {
    if (const char* env = std::getenv("TRITP_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorial triangles, planar networks, and "
                 "coefficientwise total-positivity certification"};
    app.require_subcommand(1);

    std::string family = "general4", params, format = "text";
    int nmax = 5;
    auto* tri = app.add_subcommand("triangle", "generate a triangle family");
    tri->add_option("--family", family, "eulerian|revstirling|general4|general6|ace-seq");
    tri->add_option("--params", params, "bindings, e.g. a=1,c=0,d=0,e=1");
    tri->add_option("--nmax", nmax, "largest row index")->required();
    tri->add_option("--format", format, "csv|text|json");

    std::string ck_family = "general6", ck_params, checkpoint;
    int N = 0;
    bool do_resume = false;
    CheckOptions opts;
    opts.jobs = default_jobs();
    auto* chk = app.add_subcommand("check", "certify coefficientwise total positivity");
    chk->add_option("--family", ck_family,
                    "eulerian|revstirling|general4|general6|ace-seq|planted-negative");
    chk->add_option("--params", ck_params, "bindings, e.g. d=0");
    chk->add_option("--n", N, "submatrix size N (rows and columns 0..N-1)")->required();
    chk->add_option("--rmax", opts.rmax, "largest minor order (default N)");
    chk->add_option("--jobs", opts.jobs, "worker threads (default $TRITP_JOBS or 1)");
    chk->add_option("--checkpoint", checkpoint, "checkpoint file path");
    chk->add_option("--budget-seconds", opts.budget_seconds,
                    "stop claiming work after this long (exit 2)");
    chk->add_option("--chunk-size", opts.chunk_size, "minors per work chunk");
    chk->add_flag("--resume", do_resume, "continue from --checkpoint");

    std::string suite;
    int cc_nmax = 6, minor_size = 3;
    auto* cc = app.add_subcommand("crosscheck", "run an identity suite");
    cc->add_option("--suite", suite,
                   "prop21|lemma22|reversal|thm33|census|bijection|lgv")->required();
    cc->add_option("--nmax", cc_nmax, "largest row index");
    cc->add_option("--minor-size", minor_size, "largest minor order (lgv)");

    std::string which = "Dprime", net_format = "dot";
    int net_nmax = 3;
    auto* net = app.add_subcommand("network", "dump a planar network");
    net->add_option("--which", which, "D|Dprime");
    net->add_option("--nmax", net_nmax, "largest source index");
    net->add_option("--format", net_format, "dot|json|matrix");

    std::string word_str, partition_str;
    int bn = 0, bk = 0;
    auto* bij = app.add_subcommand("bijection", "partition <-> path-word maps");
    bij->add_option("--word", word_str, "space-separated letters, e.g. 'a(1,1,0) e(0,1)'");
    bij->add_option("--partition", partition_str, "bar notation, e.g. '1,5,8|2,3,9|4,7|6'");
    bij->add_option("--n", bn, "word length");
    bij->add_option("--k", bk, "sink index");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tri->parsed()) return cmd_triangle(family, params, nmax, format);
        if (chk->parsed()) {
            opts.checkpoint_path = checkpoint;
            opts.matrix_name = ck_family + (ck_params.empty() ? "" : "(" + ck_params + ")");
            return cmd_check(ck_family, ck_params, N, opts, do_resume);
        }
        if (cc->parsed()) return cmd_crosscheck(suite, cc_nmax, minor_size);
        if (net->parsed()) return cmd_network(which, net_nmax, net_format);
        if (bij->parsed()) return cmd_bijection(word_str, partition_str, bn, bk);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
