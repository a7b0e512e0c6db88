#include "pipeline.hpp"

#include "affect/error.hpp"
#include "affect/rng.hpp"
#include "affect/text_io.hpp"

#include <fmt/format.h>

#include <exception>

namespace affect::pipeline {

StageWriter::StageWriter(const RunConfig& config, std::string stage, std::string name)
    : config_(config),
      stage_(std::move(stage)),
      name_(std::move(name)),
      dir_(config.out / stage_),
      seed_(stage_seed(config.seed, stage_)) {}

void StageWriter::write(const std::string& file, const std::string& content) {
    io::write_file(dir_ / file, content);
    files_.push_back(file);
}

void StageWriter::write_json(const std::string& file, const nlohmann::json& content) {
    write(file, content.dump(1) + "\n");
}

void StageWriter::finish() {
    nlohmann::json meta = {
        {"stage", stage_},
        {"action", name_},
        {"config_hash", config_hash(config_)},
        {"stage_seed", seed_},
        {"global_seed", config_.seed},
        {"software_version", AFFECT_VERSION},
        {"files", files_},
    };
    for (const auto& [key, value] : extra_.items()) meta[key] = value;
    io::write_file(dir_ / (name_ + ".meta.json"), meta.dump(1) + "\n");
}

void rethrow_in_stage(const std::string& stage, const std::string& input) {
    try {
        throw;
    } catch (const Error& e) {
        std::string message = e.what();
        const auto prefix = std::string(code_name(e.code())) + ": ";
        if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
        throw Error(e.code(), input.empty() ? stage + ": " + message : stage + ": " + input + ": " + message);
    }
}

lexicon::WordList load_list(const std::string& path) {
    require_file(path, "list");
    return lexicon::load_word_list(path);
}

std::string list_hash(const lexicon::WordList& list) {
    std::string joined;
    for (const auto& word : list.words()) joined += word + "\n";
    return fmt::format("{:016x}", fnv1a64(joined));
}

}  // namespace affect::pipeline
