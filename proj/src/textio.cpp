#include "motex/textio.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef MOTEX_DEFAULT_DATA_DIR
#define MOTEX_DEFAULT_DATA_DIR "data"
#endif

namespace motex {

const std::string& Record::get(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end())
        throw std::runtime_error("record [" + type + "] near line " + std::to_string(line) +
                                 ": missing field '" + key + "'");
    return it->second;
}

std::string Record::get_or(const std::string& key, const std::string& dflt) const {
    auto it = fields.find(key);
    return it == fields.end() ? dflt : it->second;
}

int Record::get_int(const std::string& key) const {
    return std::stoi(get(key));
}

static std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<Record> parse_records(const std::string& text, const std::string& origin) {
    std::vector<Record> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": malformed header");
            out.push_back(Record{trim(s.substr(1, s.size() - 2)), {}, lineno});
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": expected key = value");
        if (out.empty())
            throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": field before any record header");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        out.back().fields[key] = value;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

std::vector<Record> read_records(const std::string& path) {
    return parse_records(read_file(path), path);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::string data_dir() {
    if (const char* env = std::getenv("MOTEX_DATA"))
        return env;
    return MOTEX_DEFAULT_DATA_DIR;
}

std::string data_path(const std::string& relative) {
    return data_dir() + "/" + relative;
}

} // namespace motex
