#include "funding/country_data.hpp"

namespace funding {

namespace {

// Membership snapshot covers the 2009-2018 window: EU-28, GB included.
// Users analysing other windows override via the eu_members table.
constexpr CountryInfo kCountries[] = {
    {"US", "United States", "North America", false,
     "usa|us|u s|united states of america|america|american"},
    {"CN", "China", "Asia", false, "chinese|peoples republic of china|people's republic of china"},
    {"GB", "United Kingdom", "Europe", true,
     "uk|u k|britain|great britain|british|england|scotland|northern ireland"},
    {"DE", "Germany", "Europe", true, "german"},
    {"FR", "France", "Europe", true, "french"},
    {"JP", "Japan", "Asia", false, "japanese"},
    {"KR", "South Korea", "Asia", false, "korea|korean|republic of korea"},
    {"KP", "North Korea", "Asia", false, "democratic people's republic of korea"},
    {"IN", "India", "Asia", false, "indian"},
    {"CA", "Canada", "North America", false, "canadian"},
    {"AU", "Australia", "Oceania", false, "australian"},
    {"IT", "Italy", "Europe", true, "italian"},
    {"ES", "Spain", "Europe", true, "spanish"},
    {"NL", "Netherlands", "Europe", true, "the netherlands|dutch|holland"},
    {"CH", "Switzerland", "Europe", false, "swiss"},
    {"SE", "Sweden", "Europe", true, "swedish"},
    {"BR", "Brazil", "South America", false, "brazilian|brasil"},
    {"RU", "Russia", "Europe", false, "russian|russian federation"},
    {"TW", "Taiwan", "Asia", false, "taiwanese"},
    {"PL", "Poland", "Europe", true, "polish"},
    {"BE", "Belgium", "Europe", true, "belgian"},
    {"DK", "Denmark", "Europe", true, "danish"},
    {"AT", "Austria", "Europe", true, "austrian"},
    {"IL", "Israel", "Asia", false, "israeli"},
    {"FI", "Finland", "Europe", true, "finnish"},
    {"NO", "Norway", "Europe", false, "norwegian"},
    {"MX", "Mexico", "North America", false, "mexican"},
    {"CZ", "Czech Republic", "Europe", true, "czech|czechia"},
    {"PT", "Portugal", "Europe", true, "portuguese"},
    {"GR", "Greece", "Europe", true, "greek"},
    {"HU", "Hungary", "Europe", true, "hungarian"},
    {"IE", "Ireland", "Europe", true, "irish"},
    {"NZ", "New Zealand", "Oceania", false, ""},
    {"SG", "Singapore", "Asia", false, ""},
    {"TR", "Turkey", "Asia", false, "turkish|turkiye"},
    {"IR", "Iran", "Asia", false, "iranian"},
    {"SA", "Saudi Arabia", "Asia", false, "saudi"},
    {"ZA", "South Africa", "Africa", false, ""},
    {"EG", "Egypt", "Africa", false, "egyptian"},
    {"DZ", "Algeria", "Africa", false, "algerian"},
    {"NG", "Nigeria", "Africa", false, "nigerian"},
    {"KE", "Kenya", "Africa", false, "kenyan"},
    {"ET", "Ethiopia", "Africa", false, "ethiopian"},
    {"GH", "Ghana", "Africa", false, "ghanaian"},
    {"TZ", "Tanzania", "Africa", false, "tanzanian"},
    {"UG", "Uganda", "Africa", false, "ugandan"},
    {"MA", "Morocco", "Africa", false, "moroccan"},
    {"TN", "Tunisia", "Africa", false, "tunisian"},
    {"AR", "Argentina", "South America", false, "argentine|argentinian"},
    {"CL", "Chile", "South America", false, "chilean"},
    {"CO", "Colombia", "South America", false, "colombian"},
    {"PE", "Peru", "South America", false, "peruvian"},
    {"VE", "Venezuela", "South America", false, "venezuelan"},
    {"EC", "Ecuador", "South America", false, "ecuadorian"},
    {"UY", "Uruguay", "South America", false, "uruguayan"},
    {"BO", "Bolivia", "South America", false, "bolivian"},
    {"PY", "Paraguay", "South America", false, "paraguayan"},
    {"CU", "Cuba", "North America", false, "cuban"},
    {"TH", "Thailand", "Asia", false, "thai"},
    {"MY", "Malaysia", "Asia", false, "malaysian"},
    {"ID", "Indonesia", "Asia", false, "indonesian"},
    {"VN", "Vietnam", "Asia", false, "vietnamese|viet nam"},
    {"PH", "Philippines", "Asia", false, "philippine|filipino"},
    {"PK", "Pakistan", "Asia", false, "pakistani"},
    {"BD", "Bangladesh", "Asia", false, "bangladeshi"},
    {"LK", "Sri Lanka", "Asia", false, "sri lankan"},
    {"NP", "Nepal", "Asia", false, "nepali"},
    {"UA", "Ukraine", "Europe", false, "ukrainian"},
    {"RO", "Romania", "Europe", true, "romanian"},
    {"BG", "Bulgaria", "Europe", true, "bulgarian"},
    {"HR", "Croatia", "Europe", true, "croatian"},
    {"RS", "Serbia", "Europe", false, "serbian"},
    {"SK", "Slovakia", "Europe", true, "slovak"},
    {"SI", "Slovenia", "Europe", true, "slovenian"},
    {"EE", "Estonia", "Europe", true, "estonian"},
    {"LV", "Latvia", "Europe", true, "latvian"},
    {"LT", "Lithuania", "Europe", true, "lithuanian"},
    {"LU", "Luxembourg", "Europe", true, ""},
    {"CY", "Cyprus", "Europe", true, "cypriot"},
    {"MT", "Malta", "Europe", true, "maltese"},
    {"IS", "Iceland", "Europe", false, "icelandic"},
    {"QA", "Qatar", "Asia", false, "qatari"},
    {"AE", "United Arab Emirates", "Asia", false, "uae|emirati"},
    {"KW", "Kuwait", "Asia", false, "kuwaiti"},
    {"JO", "Jordan", "Asia", false, "jordanian"},
    {"LB", "Lebanon", "Asia", false, "lebanese"},
    {"IQ", "Iraq", "Asia", false, "iraqi"},
    {"OM", "Oman", "Asia", false, "omani"},
    {"KZ", "Kazakhstan", "Asia", false, "kazakh"},
    {"UZ", "Uzbekistan", "Asia", false, "uzbek"},
    {"GE", "Georgia", "Asia", false, "georgian"},
    {"AM", "Armenia", "Asia", false, "armenian"},
    {"AZ", "Azerbaijan", "Asia", false, "azerbaijani"},
    {"BY", "Belarus", "Europe", false, "belarusian"},
    {"HK", "Hong Kong", "Asia", false, ""},
    {"MO", "Macau", "Asia", false, "macao"},
    {"MN", "Mongolia", "Asia", false, "mongolian"},
    {"KH", "Cambodia", "Asia", false, "cambodian"},
    {"LA", "Laos", "Asia", false, "lao"},
    {"MM", "Myanmar", "Asia", false, "burma|burmese"},
    {"FJ", "Fiji", "Oceania", false, "fijian"},
    {"PG", "Papua New Guinea", "Oceania", false, ""},
    {"SN", "Senegal", "Africa", false, "senegalese"},
    {"CI", "Ivory Coast", "Africa", false, "cote d'ivoire"},
    {"CM", "Cameroon", "Africa", false, "cameroonian"},
    {"ZW", "Zimbabwe", "Africa", false, "zimbabwean"},
    {"ZM", "Zambia", "Africa", false, "zambian"},
    {"MW", "Malawi", "Africa", false, "malawian"},
    {"MZ", "Mozambique", "Africa", false, "mozambican"},
    {"BW", "Botswana", "Africa", false, "botswanan"},
    {"NA", "Namibia", "Africa", false, "namibian"},
    {"RW", "Rwanda", "Africa", false, "rwandan"},
    {"SD", "Sudan", "Africa", false, "sudanese"},
    {"SS", "South Sudan", "Africa", false, ""},
    {"LY", "Libya", "Africa", false, "libyan"},
    {"CR", "Costa Rica", "North America", false, "costa rican"},
    {"PA", "Panama", "North America", false, "panamanian"},
    {"GT", "Guatemala", "North America", false, "guatemalan"},
    {"DO", "Dominican Republic", "North America", false, ""},
    {"JM", "Jamaica", "North America", false, "jamaican"},
    {"TT", "Trinidad and Tobago", "North America", false, "trinidad"},
};

}  // namespace

std::span<const CountryInfo> builtin_countries() { return kCountries; }

const CountryInfo* find_country(const std::string& code) {
  for (const auto& c : kCountries) {
    if (code == c.code) return &c;
  }
  return nullptr;
}

std::set<std::string> builtin_eu_members() {
  std::set<std::string> out;
  for (const auto& c : kCountries) {
    if (c.eu_member) out.insert(c.code);
  }
  return out;
}

}  // namespace funding
