#include "motex/cache.hpp"

#include "motex/textio.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace motex {

static std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string resolution_to_cache(const Resolution& res) {
    std::ostringstream body;
    body << "max_t " << res.max_t() << "\n";
    for (int s = 0; s < res.stages(); ++s) {
        body << "stage " << s << " " << res.gen_count(s) << "\n";
        for (int i = 0; i < res.gen_count(s); ++i) {
            const auto& g = res.gen(s, i);
            body << "gen " << g.name << " " << g.deg.t << " " << g.deg.w << " |";
            for (const auto& t : g.diff) body << ' ' << t.basis << ':' << t.gen;
            body << " |";
            if (s == 0)
                for (int b : g.aug.support()) body << ' ' << b;
            body << "\n";
        }
    }
    std::ostringstream out;
    out << "motex-resolution-cache 1\n";
    out << "module " << res.module().name() << "\n";
    out << "algebra " << algebra_name_str(res.algebra().name()) << "\n";
    out << "base " << res.algebra().base().name() << "\n";
    out << "checksum " << fnv1a(body.str()) << "\n";
    out << body.str();
    return out.str();
}

Resolution resolution_from_cache(const std::string& text, PresentedModule module) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "motex-resolution-cache 1")
        throw std::runtime_error("cache: unsupported version header");
    std::uint64_t checksum = 0;
    std::string mod_name, alg_name, base_name;
    std::ostringstream body;
    bool in_body = false;
    std::vector<std::string> body_lines;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (!in_body) {
            if (key == "module") { ls >> mod_name; continue; }
            if (key == "algebra") { ls >> alg_name; continue; }
            if (key == "base") { ls >> base_name; continue; }
            if (key == "checksum") { ls >> checksum; in_body = true; continue; }
        }
        body_lines.push_back(line);
    }
    for (const auto& l : body_lines) body << l << "\n";
    if (fnv1a(body.str()) != checksum)
        throw std::runtime_error("cache: checksum mismatch (corrupted file)");
    if (alg_name != algebra_name_str(module.algebra().name()))
        throw std::runtime_error("cache: algebra mismatch");

    Resolution res(std::move(module));
    int stage = -1;
    for (const auto& l : body_lines) {
        std::istringstream ls(l);
        std::string key;
        ls >> key;
        if (key == "max_t") {
            int t;
            ls >> t;
            res.set_max_t(t);
        } else if (key == "stage") {
            ls >> stage;
        } else if (key == "gen") {
            std::string name;
            int t, w;
            ls >> name >> t >> w;
            std::string tok;
            ls >> tok; /* '|' */
            std::vector<DiffTerm> diff;
            while (ls >> tok && tok != "|") {
                auto colon = tok.find(':');
                diff.push_back(DiffTerm{std::stoi(tok.substr(0, colon)),
                                        std::stoi(tok.substr(colon + 1))});
            }
            F2Vec aug;
            if (stage == 0) {
                aug = F2Vec(res.module().dim(Bidegree{t, w}));
                int b;
                while (ls >> b) aug.set(b);
            }
            res.add_generator(stage, name, Bidegree{t, w}, std::move(diff), std::move(aug));
        }
    }
    /* revalidate before handing the resolution back */
    for (int s = 1; s < res.stages(); ++s) {
        for (int i = 0; i < res.gen_count(s); ++i) {
            const auto& g = res.gen(s, i);
            const auto& comp = res.component(s, g.deg);
            F2Vec v(int(comp.size()));
            int idx = res.slot_index(s, g.deg, i, 0);
            if (idx < 0) throw std::runtime_error("cache: generator slot missing");
            v.set(idx);
            F2Vec down = res.apply_diff(s, g.deg, v);
            if (s >= 2) {
                if (!res.apply_diff(s - 1, g.deg, down).is_zero())
                    throw std::runtime_error("cache: d.d != 0 after load");
            } else {
                if (!res.aug_matrix(g.deg).apply(down).is_zero())
                    throw std::runtime_error("cache: d.d != 0 after load");
            }
        }
    }
    return res;
}

void save_resolution(const std::string& path, const Resolution& res) {
    write_file(path, resolution_to_cache(res));
}

Resolution load_resolution(const std::string& path, PresentedModule module) {
    return resolution_from_cache(read_file(path), std::move(module));
}

std::string cache_dir() {
    if (const char* env = std::getenv("MOTEX_CACHE_DIR")) return env;
    return ".motex-cache";
}

std::string cache_key(const PresentedModule& module, int max_s, int max_t) {
    std::ostringstream os;
    os << module.name() << "-" << algebra_name_str(module.algebra().name()) << "-"
       << module.base().name() << "-s" << max_s << "-t" << max_t << ".res";
    std::string s = os.str();
    for (auto& c : s)
        if (c == '(' || c == ')' || c == ',' || c == '/' || c == ' ' || c == '=') c = '_';
    return s;
}

} // namespace motex
