#include "kubeharden/core/manifest.hpp"
#include "kubeharden/core/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <sstream>

namespace kubeharden {

namespace {

bool is_blank(const std::string& text) {
    return std::all_of(text.begin(), text.end(),
                       [](unsigned char c) { return std::isspace(c); });
}

// YAML core-schema scalar resolution. yaml-cpp hands us plain scalars as
// strings; explicitly quoted nodes carry the "!" tag and stay strings.
NestedRecord resolve_scalar(const YAML::Node& node) {
    const std::string& raw = node.Scalar();
    if (node.Tag() == "!") return NestedRecord(raw);

    static const std::regex int_re(R"(^[-+]?[0-9]+$)");
    static const std::regex float_re(
        R"(^[-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?$)");

    if (raw.empty() || raw == "~" || raw == "null" || raw == "Null" || raw == "NULL")
        return NestedRecord(nullptr);
    if (raw == "true" || raw == "True" || raw == "TRUE") return NestedRecord(true);
    if (raw == "false" || raw == "False" || raw == "FALSE") return NestedRecord(false);
    if (std::regex_match(raw, int_re)) {
        long long value = 0;
        auto [ptr, ec] = std::from_chars(raw.data() + (raw[0] == '+' ? 1 : 0),
                                         raw.data() + raw.size(), value);
        if (ec == std::errc() && ptr == raw.data() + raw.size())
            return NestedRecord(value);
    }
    if (std::regex_match(raw, float_re) && raw != "." ) {
        try {
            return NestedRecord(std::stod(raw));
        } catch (...) {
            // fall through to string
        }
    }
    if (raw == ".nan" || raw == ".NaN" || raw == ".inf" || raw == "-.inf")
        return NestedRecord(raw); // JSON has no non-finite numbers
    return NestedRecord(raw);
}

NestedRecord yaml_node_to_json(const YAML::Node& node) {
    switch (node.Type()) {
    case YAML::NodeType::Null:
        return NestedRecord(nullptr);
    case YAML::NodeType::Scalar:
        return resolve_scalar(node);
    case YAML::NodeType::Sequence: {
        NestedRecord arr = NestedRecord::array();
        for (const auto& item : node) arr.push_back(yaml_node_to_json(item));
        return arr;
    }
    case YAML::NodeType::Map: {
        NestedRecord obj = NestedRecord::object();
        for (const auto& kv : node) {
            std::string key = kv.first.Scalar();
            if (obj.contains(key))
                throw SyntaxError("duplicate map key: " + key,
                                  kv.first.Mark().line + 1, kv.first.Mark().column + 1);
            obj[key] = yaml_node_to_json(kv.second);
        }
        return obj;
    }
    default:
        return NestedRecord(nullptr);
    }
}

bool yaml_needs_quotes(const std::string& s) {
    if (s.empty()) return true;
    // Anything a YAML parser would re-resolve to a non-string must be quoted.
    static const std::regex ambiguous(
        R"(^([-+]?[0-9][0-9_]*|[-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?|true|True|TRUE|false|False|FALSE|null|Null|NULL|~|yes|Yes|YES|no|No|NO|on|On|ON|off|Off|OFF)$)");
    if (std::regex_match(s, ambiguous)) return true;
    if (std::isspace(static_cast<unsigned char>(s.front())) ||
        std::isspace(static_cast<unsigned char>(s.back())))
        return true;
    static const std::string special = ":#{}[]&*!|>'\"%@`,";
    if (special.find(s.front()) != std::string::npos) return true;
    if (s.rfind("- ", 0) == 0 || s.rfind("? ", 0) == 0) return true;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == ':' && s[i + 1] == ' ') return true;
        if (s[i] == ' ' && s[i + 1] == '#') return true;
    }
    if (s.find('\n') != std::string::npos) return true;
    return false;
}

std::string yaml_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string yaml_scalar_text(const NestedRecord& v) {
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        return yaml_needs_quotes(s) ? yaml_quote(s) : s;
    }
    return v.dump();
}

void emit_yaml(const NestedRecord& v, std::ostream& os, int indent, bool inline_first) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            os << (inline_first ? "" : pad) << "{}\n";
            return;
        }
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            const std::string lead = (first && inline_first) ? "" : pad;
            first = false;
            std::string key = yaml_needs_quotes(it.key()) ? yaml_quote(it.key()) : it.key();
            if (it.value().is_object() && !it.value().empty()) {
                os << lead << key << ":\n";
                emit_yaml(it.value(), os, indent + 1, false);
            } else if (it.value().is_array() && !it.value().empty()) {
                os << lead << key << ":\n";
                emit_yaml(it.value(), os, indent, false);
            } else if (it.value().is_object()) {
                os << lead << key << ": {}\n";
            } else if (it.value().is_array()) {
                os << lead << key << ": []\n";
            } else {
                os << lead << key << ": " << yaml_scalar_text(it.value()) << "\n";
            }
        }
    } else if (v.is_array()) {
        if (v.empty()) {
            os << (inline_first ? "" : pad) << "[]\n";
            return;
        }
        for (const auto& item : v) {
            if (item.is_object() || item.is_array()) {
                os << pad << "- ";
                if (item.empty()) {
                    os << (item.is_object() ? "{}" : "[]") << "\n";
                } else {
                    emit_yaml(item, os, indent + 1, true);
                }
            } else {
                os << pad << "- " << yaml_scalar_text(item) << "\n";
            }
        }
    } else {
        os << (inline_first ? "" : pad) << yaml_scalar_text(v) << "\n";
    }
}

ManifestKind classify_kind(const std::string& kind) {
    if (kind == "Role") return ManifestKind::Role;
    if (kind == "NetworkPolicy") return ManifestKind::NetworkPolicy;
    if (kind == "Deployment") return ManifestKind::Deployment;
    if (kind == "ServiceAccount") return ManifestKind::ServiceAccount;
    if (kind == "RoleBinding") return ManifestKind::RoleBinding;
    return ManifestKind::Other;
}

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' || c == '[';
    }
    return false;
}

} // namespace

std::string to_string(ManifestKind kind) {
    switch (kind) {
    case ManifestKind::Role: return "Role";
    case ManifestKind::NetworkPolicy: return "NetworkPolicy";
    case ManifestKind::Deployment: return "Deployment";
    case ManifestKind::ServiceAccount: return "ServiceAccount";
    case ManifestKind::RoleBinding: return "RoleBinding";
    case ManifestKind::Other: return "Other";
    }
    return "Other";
}

std::map<std::string, std::string> ManifestDoc::labels() const {
    std::map<std::string, std::string> out;
    if (!body.is_object()) return out;
    auto meta = body.find("metadata");
    if (meta == body.end() || !meta->is_object()) return out;
    auto labels = meta->find("labels");
    if (labels == meta->end() || !labels->is_object()) return out;
    for (auto it = labels->begin(); it != labels->end(); ++it) {
        if (it.value().is_string()) out[it.key()] = it.value().get<std::string>();
        else out[it.key()] = canonical_scalar(it.value());
    }
    return out;
}

ManifestDoc ManifestDoc::from_body(NestedRecord body) {
    if (!body.is_object()) throw MissingFieldError("kind");
    ManifestDoc doc;
    if (!body.contains("kind") || !body["kind"].is_string() ||
        body["kind"].get<std::string>().empty())
        throw MissingFieldError("kind");
    doc.kind_name = body["kind"].get<std::string>();
    doc.kind = classify_kind(doc.kind_name);
    if (body.contains("apiVersion") && body["apiVersion"].is_string())
        doc.api_version = body["apiVersion"].get<std::string>();
    if (!body.contains("metadata") || !body["metadata"].is_object() ||
        !body["metadata"].contains("name") || !body["metadata"]["name"].is_string() ||
        body["metadata"]["name"].get<std::string>().empty())
        throw MissingFieldError("metadata.name");
    doc.name_ = body["metadata"]["name"].get<std::string>();
    if (body["metadata"].contains("namespace") && body["metadata"]["namespace"].is_string())
        doc.ns_ = body["metadata"]["namespace"].get<std::string>();
    doc.body = std::move(body);
    return doc;
}

std::string ManifestDoc::to_yaml() const { return json_to_yaml(body); }

std::string ManifestDoc::to_json() const { return body.dump(2); }

std::vector<NestedRecord> yaml_to_json_documents(const std::string& text) {
    std::vector<YAML::Node> nodes;
    try {
        nodes = YAML::LoadAll(text);
    } catch (const YAML::ParserException& e) {
        throw SyntaxError(std::string("invalid YAML: ") + e.msg,
                          e.mark.line + 1, e.mark.column + 1);
    } catch (const YAML::Exception& e) {
        throw SyntaxError(std::string("invalid YAML: ") + e.what());
    }
    std::vector<NestedRecord> docs;
    for (const auto& node : nodes) {
        if (!node.IsDefined() || node.IsNull()) continue;
        docs.push_back(yaml_node_to_json(node));
    }
    return docs;
}

std::string json_to_yaml(const NestedRecord& doc) {
    std::ostringstream os;
    emit_yaml(doc, os, 0, false);
    return os.str();
}

std::vector<ManifestDoc> parse_manifest(const std::string& text) {
    if (is_blank(text)) return {};

    std::vector<NestedRecord> bodies;
    if (looks_like_json(text)) {
        NestedRecord parsed = parse_record(text);
        if (parsed.is_array()) {
            for (auto& item : parsed) bodies.push_back(std::move(item));
        } else {
            bodies.push_back(std::move(parsed));
        }
    } else {
        bodies = yaml_to_json_documents(text);
    }

    std::vector<ManifestDoc> docs;
    docs.reserve(bodies.size());
    for (auto& body : bodies) {
        if (body.is_null()) continue;
        docs.push_back(ManifestDoc::from_body(std::move(body)));
    }
    return docs;
}

} // namespace kubeharden
