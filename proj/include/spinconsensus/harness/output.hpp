#pragma once

#include "../errors.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include <unistd.h>

namespace spinconsensus::harness
{

using Cell = std::variant<double, std::int64_t, bool, std::string>;
using Row = std::vector<Cell>;

/// Tabular result of one run plus metadata that is safe to persist.
struct Table
{
	std::vector<std::string> columns;
	std::vector<Row> rows;
};

/// 17 significant digits: every finite double survives a text round trip.
[[nodiscard]] inline std::string format_double(double v)
{
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

[[nodiscard]] inline std::string format_cell(const Cell& c)
{
	struct Visitor
	{
		std::string operator()(double v) const { return format_double(v); }
		std::string operator()(std::int64_t v) const { return std::to_string(v); }
		std::string operator()(bool v) const { return v ? "true" : "false"; }
		std::string operator()(const std::string& v) const { return v; }
	};
	return std::visit(Visitor{}, c);
}

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted, quotes doubled.
[[nodiscard]] inline std::string csv_escape(const std::string& field)
{
	if(field.find_first_of(",\"\r\n") == std::string::npos)
	{
		return field;
	}
	std::string out = "\"";
	for(char ch : field)
	{
		if(ch == '"')
		{
			out += '"';
		}
		out += ch;
	}
	out += '"';
	return out;
}

[[nodiscard]] inline std::string to_csv(const Table& table)
{
	std::string out;
	auto emit = [&out](const std::vector<std::string>& fields) {
		for(std::size_t k = 0; k < fields.size(); ++k)
		{
			if(k > 0)
			{
				out += ',';
			}
			out += csv_escape(fields[k]);
		}
		out += '\n';
	};
	emit(table.columns);
	for(const auto& row : table.rows)
	{
		std::vector<std::string> fields;
		fields.reserve(row.size());
		for(const auto& c : row)
		{
			fields.push_back(format_cell(c));
		}
		emit(fields);
	}
	return out;
}

[[nodiscard]] inline nlohmann::ordered_json cell_to_json(const Cell& c)
{
	return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

/// {config, rows, meta}; rows are objects keyed by column name.
[[nodiscard]] inline std::string to_json(const Table& table, const nlohmann::ordered_json& config,
                                         const nlohmann::ordered_json& meta)
{
	nlohmann::ordered_json doc;
	doc["config"] = config;
	auto rows = nlohmann::ordered_json::array();
	for(const auto& row : table.rows)
	{
		nlohmann::ordered_json obj;
		for(std::size_t k = 0; k < table.columns.size(); ++k)
		{
			obj[table.columns[k]] = cell_to_json(row[k]);
		}
		rows.push_back(std::move(obj));
	}
	doc["rows"] = std::move(rows);
	doc["meta"] = meta;
	return doc.dump(2) + "\n";
}

/// Write via a sibling temp file and rename, so readers never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content)
{
	const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
	const auto tmp = dir / (path.filename().string() + ".tmp." + std::to_string(::getpid()));
	{
		std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
		if(!out)
		{
			throw IoFailure("cannot open '" + tmp.string() + "' for writing");
		}
		out << content;
		out.flush();
		if(!out)
		{
			throw IoFailure("write to '" + tmp.string() + "' failed");
		}
	}
	std::error_code ec;
	std::filesystem::rename(tmp, path, ec);
	if(ec)
	{
		std::filesystem::remove(tmp, ec);
		throw IoFailure("cannot rename to '" + path.string() + "'");
	}
}

} // namespace spinconsensus::harness
