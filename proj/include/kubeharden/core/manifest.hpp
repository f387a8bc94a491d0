#pragma once

#include "kubeharden/core/record.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kubeharden {

enum class ManifestKind {
    Role,
    NetworkPolicy,
    Deployment,
    ServiceAccount,
    RoleBinding,
    Other,
};

std::string to_string(ManifestKind kind);

/// Canonical in-memory Kubernetes resource. The body is the full document as
/// canonical JSON (sorted keys); typed accessors cover the fields the rest of
/// the pipeline cares about.
struct ManifestDoc {
    std::string api_version;
    ManifestKind kind = ManifestKind::Other;
    std::string kind_name;   // original kind string, also set for Other
    NestedRecord body;       // whole document, canonicalized

    const std::string& name() const { return name_; }
    const std::string& ns() const { return ns_; }
    std::map<std::string, std::string> labels() const;

    /// Builds a doc from a canonical body, classifying kind and validating
    /// that kind and metadata.name are present. Throws MissingFieldError.
    static ManifestDoc from_body(NestedRecord body);

    /// Canonical YAML rendering of the body (sorted keys, block style).
    std::string to_yaml() const;

    /// Canonical JSON rendering (sorted keys, 2-space indent).
    std::string to_json() const;

private:
    std::string name_;
    std::string ns_;
};

/// Parse YAML (possibly multi-document) or JSON text into manifest documents.
/// A JSON array yields one doc per element. Empty input yields an empty list.
/// Throws SyntaxError (with position when available) and MissingFieldError.
std::vector<ManifestDoc> parse_manifest(const std::string& text);

/// YAML text -> canonical JSON documents (sorted keys, scalars resolved per
/// the YAML core schema; explicitly quoted scalars stay strings).
std::vector<NestedRecord> yaml_to_json_documents(const std::string& text);

/// Canonical JSON -> YAML block-style text.
std::string json_to_yaml(const NestedRecord& doc);

} // namespace kubeharden
