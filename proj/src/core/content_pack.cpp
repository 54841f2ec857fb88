#include "trickery/content_pack.hpp"

#include "trickery/rng.hpp"
#include "trickery/state.hpp"
#include "trickery/world.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace trickery {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        auto part = trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (!part.empty()) out.emplace_back(part);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string join_list(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i];
    }
    return out;
}

// One [section] with its key/value pairs in file order.
struct Record {
    std::string section;
    int line = 0;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<int> field_lines;
};

struct Reader {
    const Record& rec;
    PackIssues& issues;
    std::set<std::string> used;

    const std::string* find(const std::string& key) {
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
            if (rec.fields[i].first == key) {
                used.insert(key);
                return &rec.fields[i].second;
            }
        }
        return nullptr;
    }
    std::string required(const std::string& key) {
        if (const auto* v = find(key)) return *v;
        issues.push_back({PackIssueKind::Syntax, "[" + rec.section + "] is missing '" + key + "'", rec.line});
        return {};
    }
    std::string optional(const std::string& key) {
        const auto* v = find(key);
        return v ? *v : std::string{};
    }
    void finish() {
        for (std::size_t i = 0; i < rec.fields.size(); ++i) {
            if (!used.count(rec.fields[i].first)) {
                issues.push_back({PackIssueKind::Syntax,
                                  "unknown key '" + rec.fields[i].first + "' in [" + rec.section + "]",
                                  rec.field_lines[i]});
            }
        }
    }
};

bool needs_block(const std::string& v) {
    return v.find('\n') != std::string::npos || (!v.empty() && trim(v).size() != v.size()) ||
           v.rfind("<<<", 0) == 0;
}

void put(std::ostringstream& os, std::string_view key, const std::string& value) {
    if (needs_block(value)) {
        os << key << ": <<<\n" << value << "\n>>>\n";
    } else {
        os << key << ": " << value << '\n';
    }
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string_view fire_policy_name(FirePolicy p) {
    switch (p) {
        case FirePolicy::Once: return "once";
        case FirePolicy::EveryTime: return "every_time";
        case FirePolicy::OncePerLoop: return "once_per_loop";
    }
    return "?";
}

std::optional<FirePolicy> parse_fire_policy(std::string_view s) {
    for (FirePolicy p : {FirePolicy::Once, FirePolicy::EveryTime, FirePolicy::OncePerLoop}) {
        if (fire_policy_name(p) == s) return p;
    }
    return std::nullopt;
}

std::string_view pack_issue_name(PackIssueKind k) {
    switch (k) {
        case PackIssueKind::Syntax: return "Syntax";
        case PackIssueKind::MissingTrigger: return "MissingTrigger";
        case PackIssueKind::DuplicateTrigger: return "DuplicateTrigger";
        case PackIssueKind::UnexpectedTrigger: return "UnexpectedTrigger";
        case PackIssueKind::TriggerRoomMismatch: return "TriggerRoomMismatch";
        case PackIssueKind::BadNagPlacement: return "BadNagPlacement";
        case PackIssueKind::HiddenKeyNotInBody: return "HiddenKeyNotInBody";
        case PackIssueKind::BadStrategyToken: return "BadStrategyToken";
        case PackIssueKind::BadScreenCount: return "BadScreenCount";
        case PackIssueKind::BadPatternCount: return "BadPatternCount";
        case PackIssueKind::BadCatalog: return "BadCatalog";
        case PackIssueKind::BadQuestionCount: return "BadQuestionCount";
        case PackIssueKind::MissingHints: return "MissingHints";
        case PackIssueKind::MissingRoomText: return "MissingRoomText";
        case PackIssueKind::IoError: return "IoError";
    }
    return "?";
}

// ContentPack lookups ---------------------------------------------------------

const ScriptEntry* ContentPack::script(std::string_view trigger_id) const {
    for (const auto& s : scripts) {
        if (s.trigger_id == trigger_id) return &s;
    }
    return nullptr;
}

const PatternDescriptor* ContentPack::pattern(std::string_view name) const {
    auto want = parse_pattern(name);
    for (const auto& p : patterns) {
        if (p.name == name || p.concept_name == name) return &p;
        if (want && (parse_pattern(p.concept_name) == want || parse_pattern(p.name) == want)) return &p;
    }
    return nullptr;
}

std::string ContentPack::room_description(RoomId room) const {
    for (const auto& r : rooms) {
        if (r.room == room) return r.description;
    }
    return {};
}

std::vector<std::string> ContentPack::required_items() const {
    std::vector<std::string> out;
    for (const auto& c : catalog) {
        if (c.required) out.push_back(c.id);
    }
    return out;
}

std::vector<std::string> ContentPack::decoy_items() const {
    std::vector<std::string> out;
    for (const auto& c : catalog) {
        if (!c.required) out.push_back(c.id);
    }
    return out;
}

const CatalogItem* ContentPack::item(std::string_view id) const {
    for (const auto& c : catalog) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

std::string ContentPack::hash() const { return hex64(fnv1a64(render_pack(*this))); }

// Parsing ---------------------------------------------------------------------

Result<ContentPack, PackIssues> parse_pack(std::string_view text) {
    PackIssues issues;
    std::vector<Record> records;

    std::vector<std::string_view> lines;
    for (std::size_t pos = 0; pos <= text.size();) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        std::string_view raw = lines[i];
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        const std::string_view t = trim(raw);
        if (t.empty() || t.front() == '#') continue;

        if (t.front() == '[') {
            if (t.back() != ']') {
                issues.push_back({PackIssueKind::Syntax, "unterminated section header", line_no});
                continue;
            }
            records.push_back({std::string(t.substr(1, t.size() - 2)), line_no, {}, {}});
            continue;
        }
        const auto colon = t.find(':');
        if (colon == std::string_view::npos) {
            issues.push_back({PackIssueKind::Syntax, "expected 'key: value'", line_no});
            continue;
        }
        if (records.empty()) {
            issues.push_back({PackIssueKind::Syntax, "key outside of any section", line_no});
            continue;
        }
        std::string key(trim(t.substr(0, colon)));
        std::string value(trim(t.substr(colon + 1)));
        if (value == "<<<") {
            std::string block;
            bool closed = false;
            std::size_t j = i + 1;
            for (; j < lines.size(); ++j) {
                std::string_view l = lines[j];
                if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
                if (trim(l) == ">>>") {
                    closed = true;
                    break;
                }
                if (j > i + 1) block += '\n';
                block += l;
            }
            if (!closed) {
                issues.push_back({PackIssueKind::Syntax, "block for '" + key + "' is never closed", line_no});
                i = lines.size();
            } else {
                i = j;
            }
            value = std::move(block);
        }
        records.back().fields.emplace_back(std::move(key), std::move(value));
        records.back().field_lines.push_back(line_no);
    }

    ContentPack pack;
    bool seen_meta = false;
    for (const Record& rec : records) {
        Reader r{rec, issues, {}};
        if (rec.section == "meta") {
            if (seen_meta) issues.push_back({PackIssueKind::Syntax, "second [meta] section", rec.line});
            seen_meta = true;
            pack.name = r.required("name");
            pack.language = r.optional("language");
        } else if (rec.section == "room") {
            RoomText rt;
            const auto name = r.required("room");
            auto room = parse_room(name);
            if (!room && !name.empty()) {
                issues.push_back({PackIssueKind::Syntax, "unknown room '" + name + "'", rec.line});
            }
            rt.room = room.value_or(RoomId::Keymap);
            rt.description = r.required("description");
            if (room) pack.rooms.push_back(std::move(rt));
        } else if (rec.section == "script") {
            ScriptEntry s;
            s.trigger_id = r.required("trigger");
            const auto room_text = r.required("room");
            auto room = parse_room(room_text);
            if (!room && !room_text.empty()) {
                issues.push_back({PackIssueKind::Syntax, "unknown room '" + room_text + "'", rec.line});
            }
            s.room = room.value_or(RoomId::Keymap);
            const auto fire_text = r.required("fire");
            auto fire = parse_fire_policy(fire_text);
            if (!fire && !fire_text.empty()) {
                issues.push_back({PackIssueKind::Syntax, "unknown fire policy '" + fire_text + "'", rec.line});
            }
            s.fire = fire.value_or(FirePolicy::Once);
            s.node = r.optional("node");
            s.text = r.required("text");
            pack.scripts.push_back(std::move(s));
        } else if (rec.section == "screen") {
            ScreenText s;
            s.title = r.required("title");
            s.body = r.required("body");
            s.hidden_key = r.required("hidden_key");
            s.puzzle = r.required("puzzle");
            s.answer = r.required("answer");
            pack.screens.push_back(std::move(s));
        } else if (rec.section == "item") {
            CatalogItem c;
            c.id = r.required("id");
            c.label = r.required("label");
            const auto req = r.required("required");
            if (req != "true" && req != "false") {
                issues.push_back({PackIssueKind::Syntax, "required must be true or false", rec.line});
            }
            c.required = req == "true";
            pack.catalog.push_back(std::move(c));
        } else if (rec.section == "question") {
            pack.questions.push_back(r.required("text"));
        } else if (rec.section == "hint") {
            pack.hints.push_back(r.required("text"));
        } else if (rec.section == "pattern") {
            PatternDescriptor p;
            p.name = r.required("name");
            p.concept_name = r.required("concept");
            p.strategies = split_list(r.required("strategies"));
            p.related = split_list(r.optional("related"));
            p.description = r.optional("description");
            p.known_uses = r.optional("known_uses");
            p.effect = r.optional("effect");
            p.countermeasures = r.optional("countermeasures");
            pack.patterns.push_back(std::move(p));
        } else {
            issues.push_back({PackIssueKind::Syntax, "unknown section [" + rec.section + "]", rec.line});
            continue;
        }
        r.finish();
    }
    if (!seen_meta) issues.push_back({PackIssueKind::Syntax, "missing [meta] section", 0});

    if (!issues.empty()) return fail(std::move(issues));
    return pack;
}

PackIssues validate_pack(const ContentPack& pack) {
    PackIssues issues;

    std::map<std::string, int> seen;
    for (const auto& s : pack.scripts) ++seen[s.trigger_id];
    for (const TriggerSpec& t : engine_triggers()) {
        const std::string id(t.id);
        auto it = seen.find(id);
        if (it == seen.end()) {
            issues.push_back({PackIssueKind::MissingTrigger, "no script for trigger '" + id + "'"});
        } else if (it->second > 1) {
            issues.push_back({PackIssueKind::DuplicateTrigger,
                              "trigger '" + id + "' is scripted " + std::to_string(it->second) + " times"});
        }
    }
    for (const auto& s : pack.scripts) {
        const TriggerSpec* spec = find_trigger(s.trigger_id);
        if (!spec) {
            issues.push_back({PackIssueKind::UnexpectedTrigger, "the engine never fires '" + s.trigger_id + "'"});
            continue;
        }
        if (spec->room != s.room) {
            issues.push_back({PackIssueKind::TriggerRoomMismatch,
                              "'" + s.trigger_id + "' belongs to " + std::string(room_name(spec->room))});
        }
        if (spec->nag) {
            const RoomNode* n = room_graph(s.room).node(s.node);
            if (s.node.empty() || !n || !n->mandatory || s.node == kExitNode) {
                issues.push_back({PackIssueKind::BadNagPlacement,
                                  "'" + s.trigger_id + "' needs a node every walk through " +
                                      std::string(room_name(s.room)) + " crosses, got '" + s.node + "'"});
            }
        } else if (!s.node.empty()) {
            issues.push_back({PackIssueKind::BadNagPlacement,
                              "'" + s.trigger_id + "' is not a nag prompt and takes no node"});
        }
    }

    if (pack.screens.size() != 4) {
        issues.push_back({PackIssueKind::BadScreenCount,
                          "expected 4 screens, found " + std::to_string(pack.screens.size())});
    }
    for (std::size_t i = 0; i < pack.screens.size(); ++i) {
        const auto& s = pack.screens[i];
        if (s.hidden_key.empty() || s.body.find(s.hidden_key) == std::string::npos) {
            issues.push_back({PackIssueKind::HiddenKeyNotInBody,
                              "screen " + std::to_string(i + 1) + ": hidden key '" + s.hidden_key +
                                  "' does not occur in its body"});
        }
        if (trim(s.answer).empty() || trim(s.puzzle).empty()) {
            issues.push_back({PackIssueKind::Syntax, "screen " + std::to_string(i + 1) + " has an empty puzzle"});
        }
    }

    std::set<Pattern> concepts;
    for (const auto& p : pack.patterns) {
        auto c = parse_pattern(p.concept_name);
        if (!c) {
            issues.push_back({PackIssueKind::BadPatternCount, "unknown pattern concept '" + p.concept_name + "'"});
        } else if (!concepts.insert(*c).second) {
            issues.push_back({PackIssueKind::BadPatternCount, "pattern concept '" + p.concept_name + "' appears twice"});
        }
        if (p.strategies.empty()) {
            issues.push_back({PackIssueKind::BadStrategyToken, "'" + p.name + "' lists no strategies"});
        }
        for (const auto& tok : p.strategies) {
            if (std::find(kStrategyTokens.begin(), kStrategyTokens.end(), tok) == kStrategyTokens.end()) {
                issues.push_back({PackIssueKind::BadStrategyToken,
                                  "'" + p.name + "': '" + tok + "' is not one of FAKE, OBSCURE, VIOLATE, MAXIMIZE, DENY"});
            }
        }
    }
    if (pack.patterns.size() != kAllPatterns.size()) {
        issues.push_back({PackIssueKind::BadPatternCount,
                          "expected 7 pattern descriptors, found " + std::to_string(pack.patterns.size())});
    }

    std::set<std::string> ids;
    for (const auto& c : pack.catalog) {
        if (c.id.empty() || !ids.insert(c.id).second) {
            issues.push_back({PackIssueKind::BadCatalog, "catalog id '" + c.id + "' is empty or repeated"});
        }
    }
    if (pack.required_items().empty() || pack.decoy_items().empty()) {
        issues.push_back({PackIssueKind::BadCatalog, "catalog needs at least one required item and one decoy"});
    }

    if (static_cast<int>(pack.questions.size()) != kBridgeQuestions) {
        issues.push_back({PackIssueKind::BadQuestionCount,
                          "expected " + std::to_string(kBridgeQuestions) + " bridge questions, found " +
                              std::to_string(pack.questions.size())});
    }
    if (pack.hints.empty()) issues.push_back({PackIssueKind::MissingHints, "no loop hints"});

    for (RoomId r : kAllRooms) {
        const bool found = std::any_of(pack.rooms.begin(), pack.rooms.end(),
                                       [&](const RoomText& t) { return t.room == r && !t.description.empty(); });
        if (!found) {
            issues.push_back({PackIssueKind::MissingRoomText, "no description for " + std::string(room_name(r))});
        }
    }
    return issues;
}

Result<ContentPack, PackIssues> load_pack_text(std::string_view text) {
    auto parsed = parse_pack(text);
    if (!parsed) return parsed;
    auto issues = validate_pack(*parsed);
    if (!issues.empty()) return fail(std::move(issues));
    return parsed;
}

Result<ContentPack, PackIssues> load_pack(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(PackIssues{{PackIssueKind::IoError, "cannot open " + path.string()}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_pack_text(ss.str());
}

std::string render_pack(const ContentPack& pack) {
    std::ostringstream os;
    os << "[meta]\n";
    put(os, "name", pack.name);
    put(os, "language", pack.language);
    for (const auto& r : pack.rooms) {
        os << "\n[room]\n";
        put(os, "room", std::string(room_name(r.room)));
        put(os, "description", r.description);
    }
    for (const auto& s : pack.scripts) {
        os << "\n[script]\n";
        put(os, "trigger", s.trigger_id);
        put(os, "room", std::string(room_name(s.room)));
        put(os, "fire", std::string(fire_policy_name(s.fire)));
        if (!s.node.empty()) put(os, "node", s.node);
        put(os, "text", s.text);
    }
    for (const auto& s : pack.screens) {
        os << "\n[screen]\n";
        put(os, "title", s.title);
        put(os, "body", s.body);
        put(os, "hidden_key", s.hidden_key);
        put(os, "puzzle", s.puzzle);
        put(os, "answer", s.answer);
    }
    for (const auto& c : pack.catalog) {
        os << "\n[item]\n";
        put(os, "id", c.id);
        put(os, "label", c.label);
        put(os, "required", c.required ? "true" : "false");
    }
    for (const auto& q : pack.questions) {
        os << "\n[question]\n";
        put(os, "text", q);
    }
    for (const auto& h : pack.hints) {
        os << "\n[hint]\n";
        put(os, "text", h);
    }
    for (const auto& p : pack.patterns) {
        os << "\n[pattern]\n";
        put(os, "name", p.name);
        put(os, "concept", p.concept_name);
        put(os, "strategies", join_list(p.strategies));
        put(os, "related", join_list(p.related));
        put(os, "description", p.description);
        put(os, "known_uses", p.known_uses);
        put(os, "effect", p.effect);
        put(os, "countermeasures", p.countermeasures);
    }
    return os.str();
}

std::shared_ptr<const ContentPack> default_pack() {
    static const std::shared_ptr<const ContentPack> pack = [] {
        auto loaded = load_pack_text(default_pack_text());
        if (!loaded) {
            std::string what = "built-in content pack is invalid:";
            for (const auto& i : loaded.error()) what += " " + i.detail + ";";
            throw std::logic_error(what);
        }
        return std::make_shared<const ContentPack>(std::move(loaded).value());
    }();
    return pack;
}

// Narrator lines ----------------------------------------------------------------

std::string render_template(std::string_view text, const TemplateVars& vars) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] == '{') {
            auto close = text.find('}', i + 1);
            if (close != std::string_view::npos) {
                auto it = vars.find(std::string(text.substr(i + 1, close - i - 1)));
                if (it != vars.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += text[i++];
    }
    return out;
}

Result<std::vector<NarratorLine>> lines_for(const ContentPack& pack, std::string_view trigger_id,
                                            const SessionState& state, const TemplateVars& vars) {
    const ScriptEntry* entry = pack.script(trigger_id);
    if (!entry || !find_trigger(trigger_id)) {
        return fail(ErrorCode::UnknownTrigger, "unknown trigger '" + std::string(trigger_id) + "'");
    }
    std::vector<NarratorLine> out;
    FireRecord rec;
    if (auto it = state.fired.find(std::string(trigger_id)); it != state.fired.end()) rec = it->second;
    bool fire = false;
    switch (entry->fire) {
        case FirePolicy::Once: fire = rec.count == 0; break;
        case FirePolicy::EveryTime: fire = true; break;
        case FirePolicy::OncePerLoop: fire = rec.last_pass != state.loop_pass(); break;
    }
    if (fire) out.push_back({entry->trigger_id, render_template(entry->text, vars), state.step});
    return out;
}

}  // namespace trickery
