#include "dynmis/streams.hpp"

#include <cassert>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace dynmis {

namespace {

std::uint64_t edge_key(Vertex u, Vertex v)
{
    Vertex a = std::min(u, v), b = std::max(u, v);
    return (std::uint64_t{a} << 32) | b;
}

struct UnionFind {
    std::vector<Vertex> parent;
    explicit UnionFind(Vertex n) : parent(n)
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    Vertex find(Vertex x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(Vertex a, Vertex b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[b] = a;
        return true;
    }
};

} // namespace

UpdateStream gen_forest_union(Vertex n, std::uint32_t k, std::size_t updates,
    double churn, std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("forest stream needs at least 2 vertices");
    if (k < 1)
        throw std::invalid_argument("forest count must be positive");
    if (churn < 0.0 || churn > 1.0)
        throw std::invalid_argument("churn must be in [0, 1]");

    UpdateStream s;
    s.n = n;
    s.alpha_hint = k;
    s.ops.reserve(updates);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);

    // present edges with their forest index, plus a union-find per forest
    std::vector<std::pair<Vertex, Vertex>> present;
    std::vector<std::uint32_t> forest_of;
    std::unordered_map<std::uint64_t, std::size_t> index_of;
    std::vector<UnionFind> dsu(k, UnionFind(n));
    const std::size_t capacity = std::size_t{k} * (n - 1);

    auto rebuild = [&](std::uint32_t f) {
        dsu[f] = UnionFind(n);
        for (std::size_t i = 0; i < present.size(); ++i)
            if (forest_of[i] == f) {
                bool ok = dsu[f].unite(present[i].first, present[i].second);
                assert(ok && "tracked forest grew a cycle");
                (void)ok;
            }
    };

    auto emit_delete = [&]() {
        std::uniform_int_distribution<std::size_t> which(0, present.size() - 1);
        std::size_t i = which(rng);
        auto [u, v] = present[i];
        std::uint32_t f = forest_of[i];
        index_of.erase(edge_key(u, v));
        present[i] = present.back();
        forest_of[i] = forest_of.back();
        if (i != present.size() - 1)
            index_of[edge_key(present[i].first, present[i].second)] = i;
        present.pop_back();
        forest_of.pop_back();
        rebuild(f);
        s.ops.push_back({EdgeOp::Delete, u, v});
    };

    for (std::size_t step = 0; step < updates; ++step) {
        bool want_delete = !present.empty() && coin(rng) < churn;
        if (!want_delete && present.size() < capacity) {
            bool inserted = false;
            for (int tries = 0; tries < 256 && !inserted; ++tries) {
                Vertex u = pick(rng), v = pick(rng);
                if (u == v || index_of.count(edge_key(u, v)))
                    continue;
                for (std::uint32_t f = 0; f < k; ++f) {
                    if (dsu[f].find(u) == dsu[f].find(v))
                        continue;
                    dsu[f].unite(u, v);
                    index_of[edge_key(u, v)] = present.size();
                    present.emplace_back(u, v);
                    forest_of.push_back(f);
                    s.ops.push_back({EdgeOp::Insert, u, v});
                    inserted = true;
                    break;
                }
            }
            if (inserted)
                continue;
            // dense corner: fall through to a deletion instead
        }
        if (!present.empty())
            emit_delete();
        else {
            // empty graph and a delete was drawn: insert instead
            Vertex u, v;
            do {
                u = pick(rng);
                v = pick(rng);
            } while (u == v);
            dsu[0].unite(u, v);
            index_of[edge_key(u, v)] = present.size();
            present.emplace_back(u, v);
            forest_of.push_back(0);
            s.ops.push_back({EdgeOp::Insert, u, v});
        }
    }
    return s;
}

UpdateStream gen_preferential(Vertex n, std::uint32_t m_per_vertex,
    std::uint64_t seed)
{
    if (n < 2)
        throw std::invalid_argument("preferential stream needs at least 2 vertices");
    if (m_per_vertex < 1)
        throw std::invalid_argument("attachment count must be positive");

    UpdateStream s;
    s.n = n;
    s.alpha_hint = m_per_vertex;
    std::mt19937_64 rng(seed);

    // classic degree-proportional sampling via a repeated-endpoint pool
    std::vector<Vertex> pool;
    for (Vertex t = 1; t < n; ++t) {
        std::uint32_t want = std::min<std::uint32_t>(m_per_vertex, t);
        std::unordered_set<Vertex> chosen;
        while (chosen.size() < want) {
            Vertex target;
            if (pool.empty()) {
                std::uniform_int_distribution<Vertex> uni(0, t - 1);
                target = uni(rng);
            } else {
                std::uniform_int_distribution<std::size_t> uni(0, pool.size() - 1);
                target = pool[uni(rng)];
            }
            if (target >= t || !chosen.insert(target).second)
                continue;
            s.ops.push_back({EdgeOp::Insert, t, target});
        }
        for (Vertex c : chosen) {
            pool.push_back(c);
            pool.push_back(t);
        }
    }
    return s;
}

std::uint32_t density_hint(const UpdateStream& s)
{
    if (s.n < 2)
        return 0;
    std::size_t m = 0, peak = 0;
    for (const auto& op : s.ops) {
        if (op.kind == EdgeOp::Insert)
            ++m;
        else if (m > 0)
            --m;
        peak = std::max(peak, m);
    }
    return static_cast<std::uint32_t>((peak + s.n - 2) / (s.n - 1));
}

void serialize(const UpdateStream& s, std::ostream& os)
{
    os << "n=" << s.n << " alpha=" << s.alpha_hint << "\n";
    for (const auto& op : s.ops)
        os << (op.kind == EdgeOp::Insert ? '+' : '-') << ' ' << op.u << ' '
           << op.v << "\n";
}

std::string serialize(const UpdateStream& s)
{
    std::ostringstream os;
    serialize(s, os);
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& why)
{
    throw std::invalid_argument(
        "stream parse error at line " + std::to_string(line) + ": " + why);
}

bool parse_uint(const std::string& tok, std::uint64_t& out)
{
    if (tok.empty() || tok.size() > 19)
        return false;
    out = 0;
    for (char c : tok) {
        if (c < '0' || c > '9')
            return false;
        out = out * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return true;
}

} // namespace

UpdateStream parse(const std::string& text)
{
    UpdateStream s;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line))
        parse_fail(1, "missing header");
    ++lineno;
    {
        std::uint64_t n = 0, a = 0;
        std::size_t sp = line.find(' ');
        if (sp == std::string::npos || line.compare(0, 2, "n=") != 0
            || line.compare(sp + 1, 6, "alpha=") != 0
            || !parse_uint(line.substr(2, sp - 2), n)
            || !parse_uint(line.substr(sp + 7), a))
            parse_fail(lineno, "expected \"n=<int> alpha=<int>\"");
        if (n == 0 || n > 0xffffffffull)
            parse_fail(lineno, "vertex count out of range");
        if (a == 0 || a > 0xffffffffull)
            parse_fail(lineno, "alpha out of range");
        s.n = static_cast<Vertex>(n);
        s.alpha_hint = static_cast<std::uint32_t>(a);
    }

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            parse_fail(lineno, "empty line");
        char sign = line[0];
        if (sign != '+' && sign != '-')
            parse_fail(lineno, "op must start with '+' or '-'");
        if (line.size() < 2 || line[1] != ' ')
            parse_fail(lineno, "expected single space after op sign");
        std::size_t sp = line.find(' ', 2);
        if (sp == std::string::npos)
            parse_fail(lineno, "expected two vertex ids");
        std::uint64_t u = 0, v = 0;
        if (!parse_uint(line.substr(2, sp - 2), u)
            || !parse_uint(line.substr(sp + 1), v))
            parse_fail(lineno, "malformed vertex id");
        if (u >= s.n || v >= s.n)
            parse_fail(lineno, "vertex id out of range");
        if (u == v)
            parse_fail(lineno, "self-loop");
        s.ops.push_back({sign == '+' ? EdgeOp::Insert : EdgeOp::Delete,
            static_cast<Vertex>(u), static_cast<Vertex>(v)});
    }
    return s;
}

UpdateStream parse_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open stream file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void write_file(const UpdateStream& s, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot write stream file: " + path);
    serialize(s, out);
}

} // namespace dynmis
