#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rlidx/bwt_builder.hpp"
#include "rlidx/lyndon.hpp"
#include "rlidx/lz77.hpp"
#include "rlidx/oracle.hpp"
#include "rlidx/plcp.hpp"
#include "rlidx/rlcsa.hpp"
#include "rlidx/textbook.hpp"

namespace {

using namespace rlidx;

struct cli_options {
    u64 tau = 0;   // sampling/block rate, 0 = adaptive
    u64 tau2 = 0;  // LF-shortcut sampling rate, 0 = adaptive
    bool dense = false;
    bool verify = false;
    std::string format = "auto";
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    return read_file(path);
}

void write_output(const std::string& path, const std::string& data) {
    if (path == "-")
        std::cout << data;
    else
        write_file(path, data);
}

// integer-sequence text format: '#' starts a comment, the first two numbers
// are n and sigma, then n codes each below sigma. whitespace is free-form.
std::optional<std::vector<u64>> parse_int_seq(const std::string& raw) {
    std::vector<u64> tokens;
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            u64 v = 0;
            for (char c : tok) {
                if (c < '0' || c > '9') return std::nullopt;
                u64 d = u64(c - '0');
                if (v > (~u64(0) - d) / 10) return std::nullopt;
                v = v * 10 + d;
            }
            tokens.push_back(v);
        }
    }
    if (tokens.size() < 2) return std::nullopt;
    u64 n = tokens[0], sigma = tokens[1];
    if (tokens.size() != n + 2) return std::nullopt;
    std::vector<u64> payload(tokens.begin() + 2, tokens.end());
    for (u64 v : payload)
        if (v >= sigma) return std::nullopt;
    return payload;
}

// byte payloads drop one trailing newline so `echo text | rlidx ...` indexes
// the text, not the line terminator. pass --format ints for exact control.
std::vector<u64> load_payload(const std::string& path, const std::string& format) {
    std::string raw = read_input(path);
    if (format == "ints") {
        auto p = parse_int_seq(raw);
        if (!p) throw std::runtime_error(path + ": not a valid integer-sequence file");
        return *p;
    }
    if (format == "auto")
        if (auto p = parse_int_seq(raw)) return *p;
    if (!raw.empty() && raw.back() == '\n') raw.pop_back();
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::vector<u64> payload;
    payload.reserve(raw.size());
    for (char c : raw) payload.push_back(u8(c));
    return payload;
}

// everything the query commands build on. members hold pointers to earlier
// members, so instances are pinned in place.
struct index_stack {
    build_result br;
    rank_select_support rs;
    u64 tau1;
    sa_isa_support sa;

    index_stack(const std::vector<u64>& payload, const cli_options& g)
        : br(build_bwt(payload)),
          rs(br.bwt),
          tau1(std::min(br.bwt.size(), std::max<u64>(1, g.tau ? g.tau : default_tau(br.bwt.size(), br.bwt.runs())))),
          sa(sa_isa_support::build(br.bwt, rs, tau1)) {}
    index_stack(const index_stack&) = delete;
    index_stack& operator=(const index_stack&) = delete;

    u64 tau2_of(const cli_options& g) const {
        u64 t = g.tau2 ? g.tau2 : default_tau(br.bwt.size(), br.bwt.runs());
        return std::min(br.bwt.size(), std::max<u64>(1, t));
    }
};

void run_verify(const index_stack& s) {
    const u64 n = s.br.bwt.size();
    if (n > 2000) {
        std::cerr << "verify: skipped (n=" << n << " above the brute-force ceiling)\n";
        return;
    }
    auto t = oracle::tables::build(s.br.text.codes());
    auto got = s.br.bwt.expand();
    for (u64 i = 1; i <= n; ++i)
        if (got[i - 1] != t.bwt[i]) throw std::runtime_error("verify: BWT mismatch at row " + std::to_string(i));
    for (u64 i = 1; i <= n; ++i) {
        if (s.sa.sa(i) != t.sa[i]) throw std::runtime_error("verify: SA mismatch at row " + std::to_string(i));
        if (s.sa.isa(i) != t.isa[i]) throw std::runtime_error("verify: ISA mismatch at position " + std::to_string(i));
    }
    std::cerr << "verify: ok (n=" << n << ")\n";
}

lz_parsing parse_with(const index_stack& s, const cli_options& g) {
    auto lc = lce_support::build(s.br.bwt, s.rs, s.sa, s.tau1);
    auto eng = lf_shortcut_engine::build(s.br.bwt, s.rs, s.sa, s.tau2_of(g));
    auto np = nsv_psv_support::build(s.br.bwt, s.rs, s.sa, g.dense ? nullptr : &eng, s.tau1, g.dense);
    return lz77_parse(s.br.bwt, s.rs, s.sa, lc, np);
}

// treat literal symbols as original values rather than internal codes.
lz_parsing to_original(const lz_parsing& p, const packed_text& text) {
    lz_parsing out = p;
    for (auto& ph : out.phrases)
        if (ph.literal) ph.a = text.original(ph.a);
    return out;
}

void cmd_bwt(const std::string& in, const std::string& out, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    write_output(out, s.br.bwt.serialize());
}

void cmd_plcp(const std::string& in, const std::string& out, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    auto lc = lce_support::build(s.br.bwt, s.rs, s.sa, s.tau1);
    auto pl = build_plcp(s.br.bwt, s.sa, lc);
    write_output(out, pl.succ.serialize());
}

void cmd_rlcsa_build(const std::string& in, const std::string& out, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    u64 tau = std::max<u64>(2, s.tau1);
    auto idx = rlcsa_index::build(s.br.bwt, s.rs, s.sa, tau, s.tau2_of(g));
    write_output(out, idx.serialize());
}

void cmd_rlcsa_query_sa(const std::string& path, const std::vector<u64>& rows) {
    auto idx = rlcsa_index::deserialize(read_input(path));
    for (u64 row : rows) std::cout << idx.sa_at(row) << '\n';
}

void cmd_rlcsa_query_segment(const std::string& path, u64 row, u64 len) {
    auto idx = rlcsa_index::deserialize(read_input(path));
    for (u64 v : idx.sa_segment(row, len)) std::cout << v << '\n';
}

void cmd_lz77(const std::string& in, const std::string& out, bool binary, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    auto p = to_original(parse_with(s, g), s.br.text);
    if (binary) {
        write_output(out, p.serialize());
        return;
    }
    std::ostringstream os;
    for (const auto& ph : p.phrases) {
        if (ph.literal)
            os << "L " << ph.a << '\n';
        else
            os << "C " << ph.a << ' ' << ph.b << '\n';
    }
    write_output(out, os.str());
}

void cmd_lyndon(const std::string& in, const std::string& out, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    auto lc = lce_support::build(s.br.bwt, s.rs, s.sa, s.tau1);
    auto runs = lyndon_factorize(s.br.bwt, s.rs, s.sa, lc);
    std::ostringstream os;
    for (const auto& r : runs) os << r.start << ' ' << r.len << ' ' << r.exp << '\n';
    write_output(out, os.str());
}

void cmd_distinct(const std::string& in, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    auto lc = lce_support::build(s.br.bwt, s.rs, s.sa, s.tau1);
    auto irr = irreducible_lcp(s.br.bwt, s.sa, lc);
    std::cout << distinct_substrings(irr, s.br.bwt.size()) << '\n';
}

void cmd_longest_k(const std::string& in, u64 k, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    auto lc = lce_support::build(s.br.bwt, s.rs, s.sa, s.tau1);
    auto pl = build_plcp(s.br.bwt, s.sa, lc);
    auto eng = lf_shortcut_engine::build(s.br.bwt, s.rs, s.sa, s.tau2_of(g));
    longest_k_options opt;
    opt.block = g.tau;
    opt.dense = g.dense;
    std::cout << longest_k_occurring(s.br.bwt, s.rs, s.sa, pl.succ, g.dense ? nullptr : &eng, k, opt)
              << '\n';
}

void cmd_stats(const std::string& in, const cli_options& g) {
    auto payload = load_payload(in, g.format);
    index_stack s(payload, g);
    if (g.verify) run_verify(s);
    auto lc = lce_support::build(s.br.bwt, s.rs, s.sa, s.tau1);
    auto irr = irreducible_lcp(s.br.bwt, s.sa, lc);
    u64 irr_sum = 0;
    for (auto& [pos, val] : irr) irr_sum += val;
    auto p = parse_with(s, g);
    auto runs = lyndon_factorize(s.br.bwt, s.rs, s.sa, lc);
    std::cout << "n " << payload.size() << '\n'
              << "sigma " << s.br.bwt.sigma() - 1 << '\n'
              << "r " << s.br.bwt.runs() << '\n'
              << "z " << p.phrases.size() << '\n'
              << "m " << runs.size() << '\n'
              << "irr-sum " << irr_sum << '\n';
}

void cmd_gen_fib(u64 order) {
    if (order < 1 || order > 60) throw std::runtime_error("gen fib: order must be in [1, 60]");
    std::string prev = "b", cur = "a";
    if (order == 1) cur = std::move(prev);
    for (u64 k = 3; k <= order; ++k) {
        std::string next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    std::ostringstream os;
    os << "# gen fib order=" << order << '\n' << cur.size() << " 2\n";
    for (char c : cur) os << (c == 'a' ? 0 : 1) << '\n';
    std::cout << os.str();
}

void cmd_gen_repeat(u64 block, u64 copies, double rate, u64 seed, u64 sigma) {
    if (block == 0 || copies == 0) throw std::runtime_error("gen repeat: block and copies must be positive");
    if (sigma == 0) throw std::runtime_error("gen repeat: sigma must be positive");
    std::mt19937_64 rng(seed);
    std::vector<u64> base(block);
    for (auto& c : base) c = rng() % sigma;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::ostringstream os;
    os << "# gen repeat block=" << block << " copies=" << copies << " mut-rate=" << rate
       << " sigma=" << sigma << '\n'
       << "# seed " << seed << '\n'
       << block * copies << ' ' << sigma << '\n';
    for (u64 r = 0; r < copies; ++r)
        for (u64 i = 0; i < block; ++i) {
            u64 c = base[i];
            if (coin(rng) < rate) c = rng() % sigma;
            os << c << '\n';
        }
    std::cout << os.str();
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    CLI::App app{"run-length compressed text index toolkit"};
    app.require_subcommand(1);

    cli_options g;
    app.add_option("--tau", g.tau, "sampling/block rate (0 = adaptive)");
    app.add_option("--tau2", g.tau2, "LF-shortcut sampling rate (0 = adaptive)");
    app.add_flag("--dense-fallback", g.dense, "build query blocks by direct scans instead of LF shortcuts");
    app.add_flag("--verify", g.verify, "cross-check the index against brute-force tables (small inputs)");
    app.add_option("--format", g.format, "input format: auto, bytes, ints")
        ->check(CLI::IsMember({"auto", "bytes", "ints"}));

    std::string arg_in, arg_out = "-", arg_idx;
    std::vector<u64> arg_rows;
    u64 arg_row = 0, arg_len = 0, arg_k = 0, arg_order = 0;
    u64 arg_block = 0, arg_copies = 0, arg_seed = 0, arg_sigma = 256;
    double arg_rate = 0.0;
    bool arg_binary = false;

    auto* c_bwt = app.add_subcommand("bwt", "build the run-length BWT");
    c_bwt->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_bwt->add_option("output", arg_out, "RLBW1 destination, - for stdout")->required();
    c_bwt->callback([&] { cmd_bwt(arg_in, arg_out, g); });

    auto* c_plcp = app.add_subcommand("plcp", "build the succinct PLCP bitvector");
    c_plcp->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_plcp->add_option("output", arg_out, "PLCP1 destination, - for stdout")->required();
    c_plcp->callback([&] { cmd_plcp(arg_in, arg_out, g); });

    auto* c_rlcsa = app.add_subcommand("rlcsa", "run-length compressed suffix array");
    c_rlcsa->require_subcommand(1);
    auto* c_rbuild = c_rlcsa->add_subcommand("build", "build and serialize the index");
    c_rbuild->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_rbuild->add_option("output", arg_out, "RCSA1 destination, - for stdout")->required();
    c_rbuild->callback([&] { cmd_rlcsa_build(arg_in, arg_out, g); });
    auto* c_qsa = c_rlcsa->add_subcommand("query-sa", "suffix array value at given rows");
    c_qsa->add_option("index", arg_idx, "RCSA1 file")->required();
    c_qsa->add_option("--row", arg_rows, "1-based lexicographic rows")->required();
    c_qsa->callback([&] { cmd_rlcsa_query_sa(arg_idx, arg_rows); });
    auto* c_qseg = c_rlcsa->add_subcommand("query-segment", "suffix array slice");
    c_qseg->add_option("index", arg_idx, "RCSA1 file")->required();
    c_qseg->add_option("--row", arg_row, "1-based first row")->required();
    c_qseg->add_option("--len", arg_len, "number of rows")->required();
    c_qseg->callback([&] { cmd_rlcsa_query_segment(arg_idx, arg_row, arg_len); });

    auto* c_lz = app.add_subcommand("lz77", "LZ77 factorization");
    c_lz->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_lz->add_option("output", arg_out, "phrase list destination, - for stdout");
    c_lz->add_flag("--binary", arg_binary, "write the binary LZ77 format instead of text lines");
    c_lz->callback([&] { cmd_lz77(arg_in, arg_out, arg_binary, g); });

    auto* c_lyn = app.add_subcommand("lyndon", "lyndon factorization runs");
    c_lyn->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_lyn->add_option("output", arg_out, "run list destination, - for stdout");
    c_lyn->callback([&] { cmd_lyndon(arg_in, arg_out, g); });

    auto* c_dis = app.add_subcommand("distinct", "count distinct payload substrings");
    c_dis->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_dis->callback([&] { cmd_distinct(arg_in, g); });

    auto* c_lk = app.add_subcommand("longest-k", "longest substring occurring at least k times");
    c_lk->add_option("input", arg_in, "payload file, - for stdin")->required();
    c_lk->add_option("--k", arg_k, "occurrence threshold (>= 2)")->required();
    c_lk->callback([&] { cmd_longest_k(arg_in, arg_k, g); });

    auto* c_stats = app.add_subcommand("stats", "print n, sigma, r, z, m and the irreducible sum");
    c_stats->add_option("input", arg_in, "payload file, - for stdin (default)");
    c_stats->callback([&] { cmd_stats(arg_in.empty() ? "-" : arg_in, g); });

    auto* c_gen = app.add_subcommand("gen", "deterministic corpus generators");
    c_gen->require_subcommand(1);
    auto* g_fib = c_gen->add_subcommand("fib", "fibonacci word as an integer sequence");
    g_fib->add_option("--order", arg_order, "fibonacci order (1 = single symbol)")->required();
    g_fib->callback([&] { cmd_gen_fib(arg_order); });
    auto* g_rep = c_gen->add_subcommand("repeat", "mutated copies of a random block");
    g_rep->add_option("--block", arg_block, "block length")->required();
    g_rep->add_option("--copies", arg_copies, "number of copies")->required();
    g_rep->add_option("--mut-rate", arg_rate, "per-symbol mutation probability");
    g_rep->add_option("--seed", arg_seed, "RNG seed");
    g_rep->add_option("--sigma", arg_sigma, "alphabet size (codes 0..sigma-1)");
    g_rep->callback([&] { cmd_gen_repeat(arg_block, arg_copies, arg_rate, arg_seed, arg_sigma); });

    for (auto* sub : app.get_subcommands(nullptr)) {
        sub->fallthrough();
        for (auto* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "rlidx: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
