#include <initializer_list>

#include "ilion/lexicon.hpp"

namespace ilion {

namespace {

struct TermSpec {
  const char* phrase;
  double weight;
};

struct DimensionSpec {
  const char* label;
  std::initializer_list<TermSpec> terms;
};

struct CategorySpec {
  AttackCategory category;
  std::initializer_list<TermSpec> terms;
};

// Weight scheme: 0.5 strong single marker, 0.25 weak or ambiguous marker,
// 0.6 unambiguous attack phrase (crosses the default CVL threshold alone).
// Inflected forms are listed explicitly; there is no stemming.

constexpr double kStrong = 0.5;
constexpr double kWeak = 0.25;
constexpr double kAttack = 0.6;

const DimensionSpec kDimensions[kFeatureDimensions] = {
    // Capability indicators (0-9).
    {"read",
     {{"read", kStrong},   {"reads", kStrong},   {"reading", kStrong}, {"view", kStrong},
      {"browse", kStrong}, {"retrieve", kStrong}, {"fetch", kStrong},  {"query", kStrong},
      {"look up", kStrong}, {"open", kWeak},      {"inspect", kWeak},  {"list", kWeak},
      {"check", kWeak}}},
    {"write",
     {{"write", kStrong},  {"writes", kStrong}, {"writing", kStrong}, {"save", kStrong},
      {"store", kStrong},  {"append", kStrong}, {"insert", kStrong},  {"draft", kStrong},
      {"compose", kStrong}, {"record", kWeak},  {"create", kWeak},    {"generate", kWeak},
      {"add", kWeak}}},
    {"execute",
     {{"execute", kStrong}, {"executes", kStrong}, {"executing", kStrong}, {"run", kStrong},
      {"runs", kStrong},    {"running", kStrong},  {"launch", kStrong},    {"deploy", kStrong},
      {"invoke", kStrong},  {"restart", kStrong},  {"reboot", kStrong},    {"install", kStrong},
      {"rerun", kStrong},   {"trigger", kWeak},    {"script", kWeak},      {"command", kWeak},
      {"job", kWeak}}},
    {"communicate",
     {{"send", kStrong},   {"sends", kStrong},  {"sending", kStrong}, {"email", kStrong},
      {"emails", kStrong}, {"message", kStrong}, {"messages", kStrong}, {"notify", kStrong},
      {"reply", kStrong},  {"respond", kStrong}, {"forward", kStrong}, {"publish", kStrong},
      {"announce", kWeak}, {"post", kWeak},      {"posts", kWeak},     {"call", kWeak}}},
    {"analyze",
     {{"analyze", kStrong},   {"analyzes", kStrong}, {"analyzing", kStrong},
      {"analysis", kStrong},  {"summarize", kStrong}, {"summary", kStrong},
      {"review", kStrong},    {"evaluate", kStrong}, {"assess", kStrong},
      {"calculate", kStrong}, {"aggregate", kStrong}, {"compile", kStrong},
      {"analyst", kWeak},     {"report", kWeak},     {"reports", kWeak},
      {"reporting", kWeak},   {"metrics", kWeak},    {"trends", kWeak},
      {"audit", kWeak},       {"statistics", kWeak}, {"totals", kWeak}}},
    {"approve",
     {{"approve", kStrong}, {"approves", kStrong}, {"approval", kStrong},
      {"authorize", kStrong}, {"sign off", kStrong}, {"endorse", kStrong},
      {"confirm", kWeak},   {"reject", kWeak}}},
    {"modify",
     {{"modify", kStrong},    {"modifies", kStrong}, {"modifying", kStrong},
      {"update", kStrong},    {"updates", kStrong},  {"updating", kStrong},
      {"edit", kStrong},      {"change", kStrong},   {"configure", kStrong},
      {"adjust", kStrong},    {"rename", kStrong},   {"reconfigure", kStrong},
      {"patch", kWeak},       {"reset", kWeak},      {"set", kWeak},
      {"mark", kWeak}}},
    {"delete",
     {{"delete", kStrong},  {"deletes", kStrong}, {"deleting", kStrong}, {"remove", kStrong},
      {"removes", kStrong}, {"erase", kStrong},   {"purge", kStrong},    {"wipe", kStrong},
      {"truncate", kStrong}, {"shred", kStrong},  {"drop", kWeak},       {"clear", kWeak},
      {"discard", kWeak}}},
    {"access",
     {{"access", kStrong},      {"accesses", kStrong}, {"login", kStrong},
      {"log in", kStrong},      {"sign in", kStrong},  {"permission", kStrong},
      {"permissions", kStrong}, {"grant", kStrong},    {"authenticate", kStrong},
      {"connect", kWeak},       {"session", kWeak},    {"account", kWeak},
      {"accounts", kWeak},      {"rights", kWeak}}},
    {"export",
     {{"export", kStrong},    {"exports", kStrong}, {"exporting", kStrong},
      {"download", kStrong},  {"downloads", kStrong}, {"upload", kStrong},
      {"transfer", kStrong},  {"extract", kStrong}, {"rsync", kStrong},
      {"sync", kWeak},        {"copy", kWeak},      {"backup", kWeak},
      {"backups", kWeak},     {"share", kWeak},     {"attach", kWeak},
      {"dump", kWeak}}},
    // Scope constraints (10-13).
    {"internal",
     {{"internal", kStrong}, {"intranet", kStrong}, {"in house", kStrong}, {"company", kWeak},
      {"corporate", kWeak},  {"team", kWeak},       {"staff", kWeak},      {"office", kWeak},
      {"workplace", kWeak},  {"onsite", kWeak}}},
    {"external",
     {{"external", kStrong}, {"third party", kStrong}, {"offsite", kStrong},
      {"outside", kWeak},    {"public", kWeak},        {"vendor", kWeak},
      {"partner", kWeak},    {"internet", kWeak},      {"consultant", kWeak}}},
    {"authorized",
     {{"authorized", kStrong}, {"authorised", kStrong}, {"approved", kStrong},
      {"permitted", kStrong},  {"sanctioned", kStrong}, {"within scope", kStrong},
      {"in scope", kStrong},   {"allowed", kWeak},      {"official", kWeak},
      {"verified", kWeak}}},
    {"sensitive",
     {{"sensitive", kStrong},  {"confidential", kStrong}, {"restricted", kStrong},
      {"classified", kStrong}, {"pii", kStrong},          {"personal data", kStrong},
      {"proprietary", kStrong}, {"private", kWeak},       {"secret", kWeak}}},
    // Role-domain markers (14-20).
    {"finance",
     {{"finance", kStrong}, {"financial", kStrong}, {"budget", kStrong},
      {"invoice", kStrong}, {"invoices", kStrong},  {"payment", kStrong},
      {"payments", kStrong}, {"payroll", kStrong},  {"expense", kStrong},
      {"expenses", kStrong}, {"transaction", kStrong}, {"transactions", kStrong},
      {"accounting", kStrong}, {"bank", kStrong},   {"ledger", kStrong},
      {"refund", kStrong},  {"billing", kStrong},   {"wire", kWeak},
      {"funds", kWeak},     {"revenue", kWeak},     {"spending", kWeak}}},
    {"hr_people",
     {{"hr", kStrong},        {"human resources", kStrong}, {"employee", kStrong},
      {"employees", kStrong}, {"personnel", kStrong},       {"hiring", kStrong},
      {"recruiting", kStrong}, {"onboarding", kStrong},     {"candidate", kStrong},
      {"candidates", kStrong}, {"salary", kStrong},         {"salaries", kStrong},
      {"roster", kStrong},    {"performance review", kStrong}, {"headcount", kStrong},
      {"benefits", kWeak},    {"intern", kWeak},            {"interns", kWeak}}},
    {"infrastructure",
     {{"server", kStrong},     {"servers", kStrong},    {"database", kStrong},
      {"databases", kStrong},  {"cluster", kStrong},    {"production", kStrong},
      {"staging", kStrong},    {"deployment", kStrong}, {"deployments", kStrong},
      {"infrastructure", kStrong}, {"network", kStrong}, {"firewall", kStrong},
      {"dns", kStrong},        {"pipeline", kStrong},   {"pipelines", kStrong},
      {"repository", kStrong},
      {"kubernetes", kStrong}, {"snapshot", kWeak},     {"snapshots", kWeak},
      {"cloud", kWeak},        {"container", kWeak},    {"storage", kWeak},
      {"logs", kWeak},         {"logging", kWeak},      {"config", kWeak},
      {"configuration", kWeak}, {"system", kWeak},      {"disk", kWeak},
      {"drive", kWeak},        {"volume", kWeak},       {"host", kWeak},
      {"folder", kWeak},       {"laptop", kWeak},       {"device", kWeak}}},
    {"customer_data",
     {{"customer", kStrong},  {"customers", kStrong}, {"crm", kStrong},
      {"subscriber", kStrong}, {"subscribers", kStrong}, {"customer records", kStrong},
      {"user data", kStrong}, {"client", kWeak},      {"clients", kWeak},
      {"contact", kWeak},     {"contacts", kWeak},    {"lead", kWeak},
      {"leads", kWeak}}},
    {"communication_channel",
     {{"inbox", kStrong},      {"mailbox", kStrong}, {"slack", kStrong},
      {"chat", kStrong},       {"channel", kStrong}, {"newsletter", kStrong},
      {"newsletters", kStrong}, {"mailing list", kStrong}, {"blog", kStrong},
      {"social media", kStrong}, {"webhook", kStrong}, {"ticket", kWeak},
      {"tickets", kWeak},      {"thread", kWeak},    {"attachment", kWeak}}},
    {"credentials_secrets",
     {{"password", kStrong},     {"passwords", kStrong}, {"credential", kStrong},
      {"credentials", kStrong},  {"api key", kStrong},   {"api keys", kStrong},
      {"token", kStrong},        {"tokens", kStrong},    {"secrets", kStrong},
      {"ssh key", kStrong},      {"private key", kStrong}, {"certificate", kStrong},
      {"certificates", kStrong}, {"vault", kStrong},     {"mfa", kStrong},
      {"keys", kWeak}}},
    {"scheduling",
     {{"schedule", kStrong},   {"schedules", kStrong}, {"scheduling", kStrong},
      {"scheduled", kStrong},  {"calendar", kStrong},  {"calendars", kStrong},
      {"meeting", kStrong},    {"meetings", kStrong},  {"appointment", kStrong},
      {"appointments", kStrong}, {"reminder", kStrong}, {"reminders", kStrong},
      {"invite", kStrong},     {"invites", kStrong},   {"agenda", kStrong},
      {"booking", kStrong},    {"reschedule", kStrong}, {"orientation", kWeak},
      {"standup", kWeak},      {"event", kWeak},       {"events", kWeak},
      {"series", kWeak}}},
};

const CategorySpec kCategories[kAttackCategoryCount] = {
    {AttackCategory::kPromptInjection,
     {{"ignore previous instructions", kAttack},
      {"ignore all previous", kAttack},
      {"ignore your instructions", kAttack},
      {"ignore the above", kAttack},
      {"disregard previous instructions", kAttack},
      {"disregard all previous", kAttack},
      {"forget previous instructions", kAttack},
      {"new instructions follow", kAttack},
      {"override system prompt", kAttack},
      {"new instructions", kWeak},
      {"system prompt", kWeak},
      {"hidden instructions", kWeak},
      {"embedded instructions", kWeak},
      {"as instructed", kWeak},
      {"override", kWeak},
      {"the message says", kWeak}}},
    {AttackCategory::kToolMisuse,
     {{"without approval", kAttack},
      {"bypass approval", kAttack},
      {"skip approval", kAttack},
      {"bypass validation", kAttack},
      {"disable validation", kAttack},
      {"bypass checks", kAttack},
      {"disable checks", kAttack},
      {"raw query", kAttack},
      {"skip review", kAttack},
      {"unrestricted mode", kAttack},
      {"without review", kWeak},
      {"every row", kWeak},
      {"bulk update", kWeak},
      {"admin console", kWeak},
      {"direct access", kWeak},
      {"all tools", kWeak},
      {"every table", kWeak}}},
    {AttackCategory::kDataExfiltration,
     {{"exfiltrate", kAttack},
      {"exfiltration", kAttack},
      {"siphon", kAttack},
      {"covert channel", kAttack},
      {"slow drip", kAttack},
      {"paste site", kAttack},
      {"anonymous ftp", kAttack},
      {"export", kWeak},
      {"download", kWeak},
      {"upload", kWeak},
      {"transfer", kWeak},
      {"extract", kWeak},
      {"forward", kWeak},
      {"external address", kWeak},
      {"personal email", kWeak},
      {"entire database", kWeak},
      {"all customer records", kWeak}}},
    {AttackCategory::kSocialEngineering,
     {{"impersonate", kAttack},
      {"impersonating", kAttack},
      {"impersonation", kAttack},
      {"pretend to be", kAttack},
      {"claims to be", kAttack},
      {"claiming to be", kAttack},
      {"says he is", kAttack},
      {"says she is", kAttack},
      {"without verification", kAttack},
      {"skip verification", kAttack},
      {"urgent", kWeak},
      {"urgently", kWeak},
      {"immediately", kWeak},
      {"immediate", kWeak},
      {"emergency", kWeak},
      {"on behalf of", kWeak},
      {"demands", kWeak},
      {"right away", kWeak}}},
    {AttackCategory::kJailbreak,
     {{"jailbreak", kAttack},
      {"jailbroken", kAttack},
      {"dan mode", kAttack},
      {"developer mode", kAttack},
      {"no restrictions", kAttack},
      {"without restrictions", kAttack},
      {"ignore safety", kAttack},
      {"bypass safety", kAttack},
      {"unfiltered", kAttack},
      {"no rules", kAttack},
      {"roleplay as", kWeak},
      {"act as", kWeak},
      {"pretend you are", kWeak},
      {"hypothetically", kWeak},
      {"fictional scenario", kWeak},
      {"unrestricted", kWeak}}},
    {AttackCategory::kPrivilegeEscalation,
     {{"escalate privileges", kAttack},
      {"privilege escalation", kAttack},
      {"elevate privileges", kAttack},
      {"root access", kAttack},
      {"sudo", kAttack},
      {"superuser", kAttack},
      {"admin rights", kAttack},
      {"admin access", kAttack},
      {"grant admin", kAttack},
      {"become admin", kAttack},
      {"administrator", kWeak},
      {"admin", kWeak},
      {"elevated", kWeak},
      {"full access", kWeak},
      {"all permissions", kWeak},
      {"privileged", kWeak},
      {"domain controller", kWeak}}},
    {AttackCategory::kComplianceViolation,
     {{"without consent", kAttack},
      {"skip audit", kAttack},
      {"bypass audit", kAttack},
      {"off the books", kAttack},
      {"off the record", kAttack},
      {"avoid disclosure", kAttack},
      {"circumvent policy", kAttack},
      {"gdpr", kWeak},
      {"hipaa", kWeak},
      {"regulation", kWeak},
      {"regulatory", kWeak},
      {"retention policy", kWeak},
      {"audit trail", kWeak},
      {"unreported", kWeak},
      {"undisclosed", kWeak},
      {"non compliant", kWeak}}},
    {AttackCategory::kDestructiveAction,
     {{"rm rf", kAttack},
      {"drop table", kAttack},
      {"drop database", kAttack},
      {"format disk", kAttack},
      {"logic bomb", kAttack},
      {"fork bomb", kAttack},
      {"sabotage", kAttack},
      {"disable logging", kAttack},
      {"disable backups", kAttack},
      {"kill switch", kAttack},
      {"wipe everything", kAttack},
      {"delete", kWeak},
      {"wipe", kWeak},
      {"purge", kWeak},
      {"erase", kWeak},
      {"destroy", kWeak},
      {"corrupt", kWeak},
      {"truncate", kWeak},
      {"shred", kWeak},
      {"formats", kWeak}}},
};

LexiconPack build_default_pack() {
  LexiconPack pack;
  pack.version = "1.0.0";
  pack.feature_space.version = pack.version;
  for (std::size_t i = 0; i < kFeatureDimensions; ++i) {
    const DimensionSpec& spec = kDimensions[i];
    pack.feature_space.dimension_labels.emplace_back(spec.label);
    DimensionLexicon dim;
    dim.dimension_index = i;
    for (const TermSpec& term : spec.terms) dim.terms.push_back({term.phrase, term.weight});
    pack.dimension_lexicons.push_back(std::move(dim));
  }
  for (const CategorySpec& spec : kCategories) {
    CategoryLexicon cat;
    cat.category = spec.category;
    for (const TermSpec& term : spec.terms) cat.terms.push_back({term.phrase, term.weight});
    pack.category_lexicons.push_back(std::move(cat));
  }
  return pack;
}

}  // namespace

const LexiconPack& default_pack() {
  static const LexiconPack pack = build_default_pack();
  return pack;
}

}  // namespace ilion
