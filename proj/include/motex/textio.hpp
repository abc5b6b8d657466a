#pragma once

#include <map>
#include <string>
#include <vector>

namespace motex {

/* Line-based record format used by every data file (actions, modules, rules,
 * annotations, answer tables):
 *
 *   # comment
 *   [record-type]
 *   key = value
 *   key = value
 *
 * A header starts a record; the fields belong to the most recent header.
 */
struct Record {
    std::string type;
    std::map<std::string, std::string> fields;
    int line = 0;

    bool has(const std::string& key) const { return fields.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& dflt) const;
    int get_int(const std::string& key) const;
};

std::vector<Record> parse_records(const std::string& text, const std::string& origin);
std::vector<Record> read_records(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/* whitespace-separated tokens */
std::vector<std::string> split_ws(const std::string& s);

/* location of the data directory: $MOTEX_DATA, else the build-time default */
std::string data_dir();
std::string data_path(const std::string& relative);

} // namespace motex
