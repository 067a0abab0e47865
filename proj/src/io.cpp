#include "zsram/io.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

namespace zsram {

using nlohmann::json;

AbelianGroup parse_group(const std::string& literal) {
    if (literal == "Z1") return AbelianGroup();
    std::vector<int> moduli;
    size_t pos = 0;
    while (pos < literal.size()) {
        if (literal[pos] != 'Z') throw_validation("bad group literal: " + literal);
        ++pos;
        size_t end = literal.find('x', pos);
        std::string num = literal.substr(pos, end == std::string::npos ? end : end - pos);
        if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
            throw_validation("bad group literal: " + literal);
        moduli.push_back(std::stoi(num));
        pos = end == std::string::npos ? literal.size() : end + 1;
    }
    return AbelianGroup(std::move(moduli));
}

std::string format_group(const AbelianGroup& g) {
    if (g.rank() == 0) return "Z1";
    std::string out;
    for (size_t i = 0; i < g.moduli().size(); ++i) {
        if (i) out += 'x';
        out += 'Z' + std::to_string(g.moduli()[i]);
    }
    return out;
}

GroupElement parse_element(const AbelianGroup& g, const std::string& text) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')')
        throw_validation("bad element literal: " + text);
    GroupElement e;
    std::string body = text.substr(1, text.size() - 2);
    if (!body.empty()) {
        std::stringstream ss(body);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
                throw_validation("bad element literal: " + text);
            e.residues.push_back(std::stoi(part));
        }
    }
    if (!g.valid(e)) throw_validation("element " + text + " not in " + format_group(g));
    return e;
}

std::string format_element(const GroupElement& e) {
    std::string out = "(";
    for (size_t i = 0; i < e.residues.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(e.residues[i]);
    }
    return out + ")";
}

std::string graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = g.vertex_count();
    j["edges"] = json::array();
    for (const auto& [u, v] : g.edges()) j["edges"].push_back({u, v});
    return j.dump();
}

Graph graph_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("vertices") || !j.contains("edges"))
        throw_validation("malformed graph json");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2) throw_validation("malformed edge entry");
        edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return Graph(j["vertices"].get<int>(), std::move(edges));
}

Graph graph_from_text(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    int max_id = -1;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        int u, v;
        if (!(ls >> u >> v)) throw_validation("malformed edge line: " + line);
        edges.push_back({u, v});
        max_id = std::max({max_id, u, v});
    }
    return Graph(max_id + 1, std::move(edges));
}

Graph load_graph(const std::string& path) {
    std::string text = read_file(path);
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return graph_from_json(text);
    return graph_from_text(text);
}

void save_graph(const Graph& g, const std::string& path) { write_file(path, graph_to_json(g)); }

std::string colouring_to_json(const EdgeColouring& c) {
    json j;
    j["group"] = format_group(c.group());
    j["t"] = c.pool().size();
    json edges = json::object();
    const auto& ids = c.pool().ids();
    for (size_t a = 0; a < ids.size(); ++a)
        for (size_t b = a + 1; b < ids.size(); ++b)
            edges[std::to_string(ids[a]) + "," + std::to_string(ids[b])] =
                format_element(c.value(ids[a], ids[b]));
    j["edges"] = std::move(edges);
    return j.dump();
}

EdgeColouring colouring_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("group") || !j.contains("t"))
        throw_validation("malformed colouring json");
    AbelianGroup g = parse_group(j["group"].get<std::string>());
    int t = j["t"].get<int>();
    VertexPool pool = VertexPool::range(t);
    if (j.contains("all")) {
        GroupElement v = parse_element(g, j["all"].get<std::string>());
        return EdgeColouring::constant(pool, g, v);
    }
    if (!j.contains("edges")) throw_validation("colouring json needs edges or all");
    const json& edges = j["edges"];
    std::unordered_map<long long, GroupElement> values;
    for (auto it = edges.begin(); it != edges.end(); ++it) {
        std::stringstream ks(it.key());
        std::string a, b;
        if (!std::getline(ks, a, ',') || !std::getline(ks, b))
            throw_validation("malformed pair key: " + it.key());
        int u = std::stoi(a), v = std::stoi(b);
        if (u == v || u < 0 || v < 0 || u >= t || v >= t)
            throw_validation("bad pair key: " + it.key());
        if (u > v) std::swap(u, v);
        values[(static_cast<long long>(u) << 32) | static_cast<unsigned>(v)] =
            parse_element(g, it.value().get<std::string>());
    }
    if (static_cast<long long>(values.size()) != static_cast<long long>(t) * (t - 1) / 2)
        throw_validation("colouring must cover every pair exactly once");
    return EdgeColouring::from_function(pool, g, [&](int x, int y) {
        if (x > y) std::swap(x, y);
        return values.at((static_cast<long long>(x) << 32) | static_cast<unsigned>(y));
    });
}

EdgeColouring load_colouring(const std::string& path) {
    return colouring_from_json(read_file(path));
}

void save_colouring(const EdgeColouring& c, const std::string& path) {
    write_file(path, colouring_to_json(c));
}

Graph make_cycle(int k) {
    if (k < 3) throw_validation("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.push_back({i, (i + 1) % k});
    return Graph(k, std::move(e));
}

Graph make_complete(int k) {
    if (k < 1) throw_validation("complete graph needs at least 1 vertex");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) e.push_back({i, j});
    return Graph(k, std::move(e));
}

Graph make_matching(int k) {
    if (k < 1) throw_validation("matching needs at least 1 edge");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < k; ++i) e.push_back({2 * i, 2 * i + 1});
    return Graph(2 * k, std::move(e));
}

Graph make_star(int k) {
    if (k < 1) throw_validation("star needs at least 1 leaf");
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= k; ++i) e.push_back({0, i});
    return Graph(k + 1, std::move(e));
}

namespace {

// Explicit Fisher-Yates so the sequence is fixed by the seed alone.
template <class T>
void shuffle_fixed(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[static_cast<size_t>(rng() % i)]);
}

}  // namespace

Graph random_regular(int degree, int vertices, unsigned long long seed) {
    if (degree < 1 || vertices <= degree) throw_validation("infeasible regular graph parameters");
    if ((static_cast<long long>(degree) * vertices) % 2 != 0)
        throw_validation("degree * vertices must be even");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<size_t>(degree) * static_cast<size_t>(vertices));
        for (int v = 0; v < vertices; ++v)
            for (int i = 0; i < degree; ++i) stubs.push_back(v);
        shuffle_fixed(stubs, rng);
        std::vector<std::pair<int, int>> edges;
        std::set<std::pair<int, int>> seen;
        bool simple = true;
        for (size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v) simple = false;
            if (u > v) std::swap(u, v);
            if (!seen.insert({u, v}).second) simple = false;
            edges.push_back({u, v});
        }
        if (simple) return Graph(vertices, std::move(edges));
    }
    throw_capacity("no simple pairing found within the attempt budget");
}

EdgeColouring random_colouring(const AbelianGroup& g, int t, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<GroupElement>> values(static_cast<size_t>(t));
    for (int y = 1; y < t; ++y)
        for (int x = 0; x < y; ++x)
            values[static_cast<size_t>(y)].push_back(g.element_at(
                static_cast<long long>(rng() % static_cast<unsigned long long>(g.order()))));
    return EdgeColouring::from_function(VertexPool::range(t), g, [&](int x, int y) {
        if (x > y) std::swap(x, y);
        return values[static_cast<size_t>(y)][static_cast<size_t>(x)];
    });
}

EdgeColouring planted_colouring(const Graph& g, const AbelianGroup& group, int t,
                                unsigned long long seed) {
    if (t < g.vertex_count()) throw_validation("pool too small for the planted copy");
    if (g.edge_count() == 0) throw_validation("planting needs at least one edge");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    EdgeColouring base = random_colouring(group, t, seed);

    std::vector<int> perm(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) perm[static_cast<size_t>(i)] = i;
    shuffle_fixed(perm, rng);
    std::vector<int> image(perm.begin(), perm.begin() + g.vertex_count());

    GroupElement sum = group.zero();
    for (const auto& [x, y] : g.edges())
        sum = group.add(sum, base.value(image[static_cast<size_t>(x)],
                                        image[static_cast<size_t>(y)]));
    const auto& [ex, ey] = g.edges().front();
    int px = image[static_cast<size_t>(ex)], py = image[static_cast<size_t>(ey)];
    GroupElement adjusted = group.sub(base.value(px, py), sum);
    return EdgeColouring::from_function(base.pool(), group, [&](int x, int y) {
        if ((x == px && y == py) || (x == py && y == px)) return adjusted;
        return base.value(x, y);
    });
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_validation("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_validation("cannot write " + path);
    out << content;
}

}  // namespace zsram
