#pragma once

// Persistent cache of Hall product expansions.  Storage is sharded one file
// per (quiver, q) pair inside the cache directory:
//
//   hall_<quiver>_q<q>.txt      (':' in the quiver spec rendered as '-')
//
// Each shard is plain text, one product per line:
//
//   # hall-cache v1
//   q=<int> quiver=<spec> A=<class> B=<class> -> <class>:<rat>[,<class>:<rat>...]
//
// Coefficients are the untwisted rationals of the diamond product.  A put that
// disagrees with a stored line, or a malformed/mis-versioned shard, raises
// CorruptCache: a cache must never silently shade a computation.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ihall/errors.hpp"
#include "ihall/rational.hpp"

namespace ihall {

class HallCache {
public:
    static constexpr const char* kHeader = "# hall-cache v1";

    explicit HallCache(std::string dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
        load();
    }

    using Expansion = std::vector<std::pair<std::string, Rat>>;

    std::optional<Expansion> get(long q, const std::string& quiver, const std::string& A,
                                 const std::string& B) const {
        auto it = map_.find(key(q, quiver, A, B));
        if (it == map_.end()) return std::nullopt;
        ++hits_;
        return it->second;
    }

    void put(long q, const std::string& quiver, const std::string& A, const std::string& B,
             const Expansion& terms) {
        std::string k = key(q, quiver, A, B);
        auto it = map_.find(k);
        if (it != map_.end()) {
            if (it->second != terms)
                throw CorruptCache("conflicting value for '" + k + "' in " + shard_path(q, quiver));
            return;
        }
        map_[k] = terms;
        std::string p = shard_path(q, quiver);
        bool fresh = !std::filesystem::exists(p);
        std::ofstream out(p, std::ios::app);
        if (!out) throw CorruptCache("cannot append to " + p);
        if (fresh) out << kHeader << "\n";
        out << k << " -> " << render(terms) << "\n";
    }

    std::size_t size() const { return map_.size(); }
    std::size_t hits() const { return hits_; }
    std::string dir() const { return dir_; }

    // Shard file owning entries for the given (quiver, q).
    std::string shard_path(long q, const std::string& quiver) const {
        std::string tag = quiver;
        for (char& c : tag)
            if (c == ':' || c == '/' || c == '\\') c = '-';
        return dir_ + "/hall_" + tag + "_q" + std::to_string(q) + ".txt";
    }

    // Rewrite every shard from memory (drops duplicates, re-homes entries
    // whose shard file was renamed, deletes shard files left with no entries;
    // a no-op on a healthy store).  Returns the number of live entries.
    std::size_t compact() {
        std::map<std::string, std::vector<const std::map<std::string, Expansion>::value_type*>> by_shard;
        for (const auto& kv : map_) {
            Key k = parse_key(kv.first);
            by_shard[shard_path(k.q, k.quiver)].push_back(&kv);
        }
        for (const auto& [p, rows] : by_shard) {
            std::ofstream out(p, std::ios::trunc);
            out << kHeader << "\n";
            for (const auto* kv : rows) out << kv->first << " -> " << render(kv->second) << "\n";
        }
        for (const auto& ent : std::filesystem::directory_iterator(dir_)) {
            if (!ent.is_regular_file()) continue;
            std::string p = ent.path().string();
            if (is_shard_name(ent.path().filename().string()) && !by_shard.count(p))
                std::filesystem::remove(ent.path());
        }
        return map_.size();
    }

    // All entries, for verification sweeps.
    const std::map<std::string, Expansion>& entries() const { return map_; }

    // Entry counts grouped by owning shard file, for stats reports.
    std::map<std::string, std::size_t> shard_counts() const {
        std::map<std::string, std::size_t> out;
        for (const auto& kv : map_) {
            Key k = parse_key(kv.first);
            ++out[shard_path(k.q, k.quiver)];
        }
        return out;
    }

    struct Key {
        long q;
        std::string quiver, A, B;
    };
    static Key parse_key(const std::string& k) {
        Key out;
        std::istringstream in(k);
        std::string tq, tquiver, ta, tb;
        in >> tq >> tquiver >> ta >> tb;
        auto strip = [&](const std::string& t, const char* pfx) {
            if (t.rfind(pfx, 0) != 0) throw CorruptCache("bad cache key field '" + t + "'");
            return t.substr(std::string(pfx).size());
        };
        out.q = std::stol(strip(tq, "q="));
        out.quiver = strip(tquiver, "quiver=");
        out.A = strip(ta, "A=");
        out.B = strip(tb, "B=");
        return out;
    }

private:
    static std::string key(long q, const std::string& quiver, const std::string& A,
                           const std::string& B) {
        return "q=" + std::to_string(q) + " quiver=" + quiver + " A=" + A + " B=" + B;
    }
    static std::string render(const Expansion& terms) {
        std::string s;
        for (std::size_t i = 0; i < terms.size(); ++i)
            s += (i ? "," : "") + terms[i].first + ":" + rat_str(terms[i].second);
        return s;
    }
    static bool is_shard_name(const std::string& name) {
        return name.rfind("hall_", 0) == 0 && name.size() > 9 &&
               name.substr(name.size() - 4) == ".txt";
    }

    void load() {
        for (const auto& ent : std::filesystem::directory_iterator(dir_)) {
            if (!ent.is_regular_file()) continue;
            if (is_shard_name(ent.path().filename().string())) load_file(ent.path().string());
        }
    }

    void load_file(const std::string& p) {
        std::ifstream in(p);
        if (!in) throw CorruptCache("cannot read " + p);
        std::string line;
        if (!std::getline(in, line) || line != kHeader)
            throw CorruptCache("bad or missing header in " + p);
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            auto arrow = line.find(" -> ");
            if (arrow == std::string::npos)
                throw CorruptCache("malformed line " + std::to_string(lineno) + " in " + p);
            std::string k = line.substr(0, arrow);
            parse_key(k);  // validates shape
            Expansion terms;
            std::string rhs = line.substr(arrow + 4);
            std::size_t b = 0;
            while (b < rhs.size()) {
                auto comma = rhs.find(',', b);
                std::string tok = rhs.substr(b, comma == std::string::npos ? comma : comma - b);
                auto colon = tok.rfind(':');
                if (colon == std::string::npos)
                    throw CorruptCache("malformed term '" + tok + "' in " + p);
                try {
                    terms.push_back({tok.substr(0, colon), rat_parse(tok.substr(colon + 1))});
                } catch (const ParseError&) {
                    throw CorruptCache("bad coefficient in '" + tok + "' in " + p);
                }
                if (comma == std::string::npos) break;
                b = comma + 1;
            }
            auto it = map_.find(k);
            if (it != map_.end() && it->second != terms)
                throw CorruptCache("conflicting duplicate for '" + k + "' in " + p);
            map_[k] = std::move(terms);
        }
    }

    std::string dir_;
    std::map<std::string, Expansion> map_;
    mutable std::size_t hits_ = 0;
};

} // namespace ihall
