#pragma once

// Checkpoint file, text, one record per line:
//
//   ehinv-checkpoint 1
//   spec_hash <16 hex digits>
//   chunks <count>
//   done <one 0/1 character per chunk>
//   tally <chunk id> <json>        (one line per completed chunk)
//   end

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"

namespace ehinv::verify {

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCheckpointMagic = "ehinv-checkpoint";
inline constexpr int kCheckpointVersion = 1;

struct CheckpointState {
    std::uint64_t spec_hash = 0;
    std::vector<std::optional<Tally>> chunks;
};

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Writes to a sibling temp file and renames it over `path`.
inline void save_checkpoint(const std::string& path, const CheckpointState& state) {
    std::ostringstream out;
    out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
    out << "spec_hash " << hex64(state.spec_hash) << '\n';
    out << "chunks " << state.chunks.size() << '\n';
    out << "done ";
    for (const auto& c : state.chunks) out << (c ? '1' : '0');
    out << '\n';
    for (std::size_t i = 0; i < state.chunks.size(); ++i)
        if (state.chunks[i]) out << "tally " << i << ' ' << tally_to_json(*state.chunks[i]).dump() << '\n';
    out << "end\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream file(tmp, std::ios::trunc);
        if (!file) throw CheckpointError("cannot write checkpoint '" + tmp + "'");
        file << out.str();
        if (!file.flush()) throw CheckpointError("short write to checkpoint '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw CheckpointError("cannot move checkpoint into place at '" + path + "': " + ec.message());
}

inline CheckpointState load_checkpoint(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw CheckpointError("cannot open checkpoint '" + path + "'");
    auto corrupt = [&](const std::string& why) { return CheckpointError("corrupt checkpoint '" + path + "': " + why); };

    std::string line;
    std::string word;
    int version = 0;
    if (!std::getline(file, line)) throw corrupt("empty file");
    {
        std::istringstream in(line);
        if (!(in >> word >> version) || word != kCheckpointMagic) throw corrupt("bad header");
        if (version != kCheckpointVersion) throw corrupt("unsupported version " + std::to_string(version));
    }

    CheckpointState state;
    std::string hash_text;
    if (!std::getline(file, line)) throw corrupt("missing spec_hash");
    {
        std::istringstream in(line);
        if (!(in >> word >> hash_text) || word != "spec_hash" || hash_text.size() != 16) throw corrupt("bad spec_hash");
        try {
            state.spec_hash = std::stoull(hash_text, nullptr, 16);
        } catch (const std::exception&) {
            throw corrupt("bad spec_hash");
        }
    }

    std::size_t count = 0;
    if (!std::getline(file, line)) throw corrupt("missing chunk count");
    {
        std::istringstream in(line);
        if (!(in >> word >> count) || word != "chunks") throw corrupt("bad chunk count");
    }
    state.chunks.resize(count);

    std::string bitmap;
    if (!std::getline(file, line)) throw corrupt("missing chunk bitmap");
    {
        std::istringstream in(line);
        in >> word >> bitmap;
        if (word != "done" || (count != 0 && bitmap.size() != count)) throw corrupt("bad chunk bitmap");
    }

    bool ended = false;
    while (std::getline(file, line)) {
        if (line == "end") {
            ended = true;
            break;
        }
        std::istringstream in(line);
        std::size_t id = 0;
        if (!(in >> word >> id) || word != "tally" || id >= count) throw corrupt("bad tally record");
        std::string payload;
        std::getline(in, payload);
        try {
            state.chunks[id] = tally_from_json(nlohmann::json::parse(payload));
        } catch (const std::exception& e) {
            throw corrupt(std::string("unreadable tally: ") + e.what());
        }
    }
    if (!ended) throw corrupt("truncated (no end marker)");
    for (std::size_t i = 0; i < count; ++i)
        if ((bitmap[i] == '1') != state.chunks[i].has_value()) throw corrupt("bitmap disagrees with tally records");
    return state;
}

} // namespace ehinv::verify
