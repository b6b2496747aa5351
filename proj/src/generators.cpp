#include "homdens/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "homdens/pattern.hpp"

namespace homdens {

uint64_t SeededRng::below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bound must be positive");
    uint64_t lim = (UINT64_MAX / bound) * bound;
    uint64_t r;
    do {
        r = next();
    } while (r >= lim);
    return r % bound;
}

bool SeededRng::bernoulli(const Rat& p) {
    if (p < 0 || p > 1)
        throw std::invalid_argument("probability out of [0,1]: " + rat_str(p));
    const Int& num = p.get_num();
    const Int& den = p.get_den();
    if (mpz_sizeinbase(den.get_mpz_t(), 2) > 63)
        throw std::invalid_argument("probability denominator too large: " +
                                    rat_str(p));
    uint64_t d = mpz_get_ui(den.get_mpz_t());
    uint64_t n = mpz_get_ui(num.get_mpz_t());
    if (n == d) return true;
    return below(d) < n;
}

const char* rng_identifier() { return "mt19937_64-rejection-v1"; }

GenSpec GenSpec::parse(const std::string& text) {
    GenSpec spec;
    auto colon = text.find(':');
    spec.family = text.substr(0, colon);
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        size_t start = 0;
        while (start < rest.size()) {
            auto comma = rest.find(',', start);
            std::string item = rest.substr(
                start, comma == std::string::npos ? std::string::npos
                                                  : comma - start);
            auto eq = item.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("bad genspec parameter: " + item);
            spec.params[item.substr(0, eq)] = item.substr(eq + 1);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return spec;
}

std::string GenSpec::canonical() const {
    std::string out = family + "(";
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) out += ",";
        out += k + "=" + v;
        first = false;
    }
    out += ")";
    return out;
}

long GenSpec::get_int(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("genspec " + family +
                                    " missing parameter '" + key + "'");
    try {
        size_t used = 0;
        long v = std::stol(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("genspec parameter '" + key +
                                    "' is not an integer: " + it->second);
    }
}

Rat GenSpec::get_rat(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("genspec " + family +
                                    " missing parameter '" + key + "'");
    return parse_rational(it->second);
}

uint64_t GenSpec::get_seed() const {
    auto it = params.find("seed");
    if (it == params.end())
        throw std::invalid_argument(
            "genspec " + family +
            " requires an explicit seed (no ambient entropy)");
    return std::stoull(it->second);
}

namespace {

bool is_prime(long q) {
    if (q < 2) return false;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

Graph gen_gnp(int n, const Rat& p, uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("gnp needs n >= 1");
    if (p < 0 || p > 1)
        throw std::invalid_argument("gnp needs p in [0,1], got " + rat_str(p));
    SeededRng rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

Graph gen_random_bipartite(int n1, int n2, const Rat& p, uint64_t seed) {
    if (n1 <= 0 || n2 <= 0)
        throw std::invalid_argument("random_bipartite needs positive part sizes");
    if (p < 0 || p > 1)
        throw std::invalid_argument("random_bipartite needs p in [0,1]");
    SeededRng rng(seed);
    Graph g(n1 + n2);
    for (int u = 0; u < n1; ++u)
        for (int v = 0; v < n2; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, n1 + v);
    return g;
}

Graph gen_complete(int n) {
    if (n <= 0) throw std::invalid_argument("complete needs n >= 1");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph gen_paley(long q) {
    if (!is_prime(q) || q % 4 != 1)
        throw std::invalid_argument(
            "paley modulus must be a prime congruent to 1 mod 4, got " +
            std::to_string(q));
    std::vector<char> is_qr(q, 0);
    for (long x = 1; x < q; ++x) is_qr[(x * x) % q] = 1;
    Graph g(static_cast<int>(q));
    for (long u = 0; u < q; ++u)
        for (long v = u + 1; v < q; ++v)
            if (is_qr[(v - u) % q]) g.add_edge(static_cast<int>(u),
                                               static_cast<int>(v));
    return g;
}

Graph gen_two_cliques(int n) {
    if (n < 2) throw std::invalid_argument("two_cliques needs n >= 2");
    int a = n / 2;
    Graph g(n);
    for (int u = 0; u < a; ++u)
        for (int v = u + 1; v < a; ++v) g.add_edge(u, v);
    for (int u = a; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph gen_blow_up(const Graph& base, int t) {
    if (t <= 0) throw std::invalid_argument("blow_up needs t >= 1");
    long long nv = static_cast<long long>(base.size()) * t;
    if (nv > 1'000'000) throw std::invalid_argument("blow_up result too large");
    Graph g(static_cast<int>(nv));
    for (auto [u, v] : base.edges())
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) g.add_edge(u * t + i, v * t + j);
    return g;
}

}  // namespace

Graph generate(const GenSpec& spec) {
    const std::string& f = spec.family;
    if (f == "gnp")
        return gen_gnp(static_cast<int>(spec.get_int("n")), spec.get_rat("p"),
                       spec.get_seed());
    if (f == "random_bipartite")
        return gen_random_bipartite(static_cast<int>(spec.get_int("n1")),
                                    static_cast<int>(spec.get_int("n2")),
                                    spec.get_rat("p"), spec.get_seed());
    if (f == "complete") return gen_complete(static_cast<int>(spec.get_int("n")));
    if (f == "complete_bipartite")
        return graph_from_name("K" + std::to_string(spec.get_int("a")) + "," +
                               std::to_string(spec.get_int("b")));
    if (f == "path") return graph_from_name("P" + std::to_string(spec.get_int("k")));
    if (f == "cycle") return graph_from_name("C" + std::to_string(spec.get_int("k")));
    if (f == "star") return graph_from_name("S" + std::to_string(spec.get_int("k")));
    if (f == "hypercube")
        return graph_from_name("Q" + std::to_string(spec.get_int("dim")));
    if (f == "paley") return gen_paley(spec.get_int("q"));
    if (f == "two_cliques")
        return gen_two_cliques(static_cast<int>(spec.get_int("n")));
    if (f == "blow_up") {
        auto it = spec.params.find("of");
        if (it == spec.params.end())
            throw std::invalid_argument("blow_up needs of=<graph name>");
        return gen_blow_up(graph_from_name(it->second),
                           static_cast<int>(spec.get_int("t")));
    }
    throw std::invalid_argument("unknown generator family: " + f);
}

Graph perturb(const Graph& g, long long flips, uint64_t seed) {
    long long n = g.size();
    long long pairs = n * (n - 1) / 2;
    if (flips < 0 || flips > pairs)
        throw std::invalid_argument("flip count out of range");
    SeededRng rng(seed);
    std::set<long long> chosen;
    while (static_cast<long long>(chosen.size()) < flips)
        chosen.insert(static_cast<long long>(rng.below(pairs)));
    Graph out = g;
    for (long long idx : chosen) {
        // pair index -> (u, v) in lexicographic order
        long long u = 0, before = 0;
        while (before + (n - 1 - u) <= idx) {
            before += n - 1 - u;
            ++u;
        }
        long long v = u + 1 + (idx - before);
        out.toggle_edge(static_cast<int>(u), static_cast<int>(v));
    }
    return out;
}

}  // namespace homdens
