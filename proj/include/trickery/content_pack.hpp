#pragma once

#include "trickery/ids.hpp"
#include "trickery/result.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace trickery {

struct SessionState;

enum class FirePolicy : uint8_t { Once, EveryTime, OncePerLoop };
std::string_view fire_policy_name(FirePolicy p);
std::optional<FirePolicy> parse_fire_policy(std::string_view s);

struct ScriptEntry {
    std::string trigger_id;
    RoomId room = RoomId::Keymap;
    FirePolicy fire = FirePolicy::Once;
    std::string text;
    std::string node;  // placement, nag triggers only

    bool operator==(const ScriptEntry&) const = default;
};

struct ScreenText {
    std::string title;
    std::string body;
    std::string hidden_key;
    std::string puzzle;
    std::string answer;

    bool operator==(const ScreenText&) const = default;
};

struct CatalogItem {
    std::string id;
    std::string label;
    bool required = false;

    bool operator==(const CatalogItem&) const = default;
};

struct RoomText {
    RoomId room = RoomId::Keymap;
    std::string description;

    bool operator==(const RoomText&) const = default;
};

struct PatternDescriptor {
    std::string name;     // in-game name
    std::string concept_name;  // deceptive pattern concept
    std::vector<std::string> strategies;
    std::vector<std::string> related;
    std::string description;
    std::string known_uses;
    std::string effect;
    std::string countermeasures;

    bool operator==(const PatternDescriptor&) const = default;
};

struct ContentPack {
    std::string name;
    std::string language;
    std::vector<RoomText> rooms;
    std::vector<ScriptEntry> scripts;
    std::vector<ScreenText> screens;
    std::vector<CatalogItem> catalog;
    std::vector<std::string> questions;
    std::vector<std::string> hints;
    std::vector<PatternDescriptor> patterns;

    bool operator==(const ContentPack&) const = default;

    const ScriptEntry* script(std::string_view trigger_id) const;
    const PatternDescriptor* pattern(std::string_view name) const;
    std::string room_description(RoomId room) const;
    std::vector<std::string> required_items() const;
    std::vector<std::string> decoy_items() const;
    const CatalogItem* item(std::string_view id) const;
    int hint_count() const { return static_cast<int>(hints.size()); }

    // Stable hex digest of the rendered pack.
    std::string hash() const;
};

enum class PackIssueKind : uint8_t {
    Syntax,
    MissingTrigger,
    DuplicateTrigger,
    UnexpectedTrigger,
    TriggerRoomMismatch,
    BadNagPlacement,
    HiddenKeyNotInBody,
    BadStrategyToken,
    BadScreenCount,
    BadPatternCount,
    BadCatalog,
    BadQuestionCount,
    MissingHints,
    MissingRoomText,
    IoError,
};

std::string_view pack_issue_name(PackIssueKind k);

struct PackIssue {
    PackIssueKind kind;
    std::string detail;
    int line = 0;  // 0 when not tied to a source line

    bool operator==(const PackIssue&) const = default;
};

using PackIssues = std::vector<PackIssue>;

inline constexpr std::array<std::string_view, 5> kStrategyTokens = {
    "FAKE", "OBSCURE", "VIOLATE", "MAXIMIZE", "DENY",
};

// Syntax only; semantic checks are validate_pack's job.
Result<ContentPack, PackIssues> parse_pack(std::string_view text);
// Every semantic problem, not just the first.
PackIssues validate_pack(const ContentPack& pack);
// parse + validate.
Result<ContentPack, PackIssues> load_pack_text(std::string_view text);
Result<ContentPack, PackIssues> load_pack(const std::filesystem::path& path);

std::string render_pack(const ContentPack& pack);

// English pack compiled into the binary.
std::shared_ptr<const ContentPack> default_pack();
std::string_view default_pack_text();

// Narrator lines ------------------------------------------------------------

struct NarratorLine {
    std::string trigger_id;
    std::string text;
    uint64_t step = 0;

    bool operator==(const NarratorLine&) const = default;
};

using TemplateVars = std::map<std::string, std::string>;

// Replaces {name} placeholders. Unknown names are left untouched.
std::string render_template(std::string_view text, const TemplateVars& vars);

// Lines the trigger would emit now, honouring its fire policy against the
// state's fire record. Does not mutate anything; the engine records the firing.
Result<std::vector<NarratorLine>> lines_for(const ContentPack& pack, std::string_view trigger_id,
                                            const SessionState& state,
                                            const TemplateVars& vars = {});

}  // namespace trickery
