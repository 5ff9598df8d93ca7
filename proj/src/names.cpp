#include "vrcap/names.hpp"

#include <array>

namespace vrcap {
namespace {

constexpr std::array<std::string_view, 1500> kNames = {
    "Sinom", "Jotith", "Tose", "Moras", "Hodail", "Tapeith", "Gaku", "Dalir",
    "Bamur", "Razel", "Lubreis", "Tuzam", "Nafath", "Steinor", "Petain", "Leitron",
    "Zufam", "Taidar", "Kleivair", "Gozeth", "Brasam", "Fehes", "Kufem", "Pureith",
    "Lutra", "Setrai", "Munam", "Tetum", "Trezuth", "Dustem", "Jifaith", "Nenu",
    "Brunus", "Heigen", "Rosail", "Dratai", "Faipon", "Jaiklas", "Zakain", "Pifath",
    "Stideith", "Briseth", "Futair", "Zeguth", "Pobar", "Lakan", "Raijil", "Faisus",
    "Ruzom", "Pafeis", "Dozas", "Dritraith", "Peipeim", "Meizeth", "Traijeim", "Geram",
    "Raklain", "Kizeil", "Tulam", "Zobreith", "Beina", "Geitim", "Steiheir", "Sumus",
    "Bruzus", "Baifem", "Stageil", "Kaida", "Trape", "Zipin", "Babrir", "Kaikum",
    "Nitei", "Kagu", "Sejor", "Gaistom", "Reikler", "Suner", "Leijal", "Steisaith",
    "Jainai", "Drurul", "Fomeith", "Vuzair", "Pupin", "Dratrom", "Drubreis", "Taraim",
    "Steri", "Staihi", "Bakem", "Bestal", "Biral", "Kotror", "Peigin", "Dahom",
    "Brodai", "Seihein", "Driruth", "Jefail", "Paigaim", "Vaibrim", "Tratrur", "Kludreim",
    "Faiklem", "Dritel", "Stogos", "Breiber", "Libreir", "Sosuth", "Tretrair", "Jukal",
    "Brostem", "Keibrer", "Vaketh", "Mudron", "Kipaith", "Bilon", "Trados", "Braidil",
    "Baihoth", "Manin", "Bivol", "Gepeith", "Sotrol", "Holun", "Laihis", "Zainir",
    "Trekeil", "Reifin", "Steruth", "Haitrai", "Sonen", "Laibrir", "Hoklu", "Briston",
    "Braisan", "Lanul", "Keijum", "Dohul", "Tribrur", "Zise", "Bafel", "Davem",
    "Trustith", "Beiklim", "Zeider", "Bazel", "Bubaim", "Klabal", "Madeir", "Nastai",
    "Haisi", "Ledrar", "Fevim", "Disteir", "Reizos", "Gigain", "Zuhim", "Daitrul",
    "Dradrei", "Tepeil", "Furir", "Haklum", "Daihan", "Talom", "Klojair", "Tuhor",
    "Veidru", "Fotom", "Divul", "Padror", "Keijeim", "Baitruth", "Klosail", "Drolun",
    "Rahol", "Klaista", "Telo", "Saijir", "Domei", "Tegim", "Dritroth", "Trestaith",
    "Herais", "Pidreir", "Perel", "Brirail", "Mumol", "Brotru", "Rison", "Jepin",
    "Bribol", "Zamam", "Rodril", "Drasor", "Nokeith", "Zuvo", "Trudrei", "Jolen",
    "Pahum", "Klopair", "Pahain", "Zaidaim", "Klosteil", "Movi", "Sebem", "Kaimaim",
    "Traril", "Bairi", "Faifos", "Sifeis", "Tudral", "Gamir", "Klojeim", "Naitrun",
    "Zofu", "Seikun", "Dreirur", "Pimoth", "Higeim", "Pasti", "Klestein", "Daifith",
    "Robar", "Haiklar", "Drusis", "Joges", "Geigeis", "Jaibeir", "Klugas", "Higur",
    "Hadais", "Veisen", "Hoklen", "Base", "Tabrein", "Gezus", "Baikon", "Braibeir",
    "Zabun", "Reito", "Bebes", "Kihun", "Bustin", "Pupel", "Naigur", "Stester",
    "Nebre", "Mubim", "Treistain", "Titun", "Klaitreim", "Raimoth", "Sokluth", "Klagum",
    "Zafeil", "Stufith", "Klihu", "Kotir", "Rilur", "Fidon", "Stebur", "Bekal",
    "Hubril", "Kasa", "Pupul", "Vuheith", "Meidrin", "Brizar", "Sozos", "Sejeim",
    "Daijim", "Brager", "Natos", "Trasi", "Kaijun", "Lapor", "Ruju", "Vuklith",
    "Titan", "Heidris", "Bamein", "Geipo", "Trugeir", "Meibos", "Moste", "Faizais",
    "Trujeith", "Draikeis", "Hister", "Zadros", "Sigeith", "Pikim", "Zelil", "Drotruth",
    "Klahath", "Ferail", "Brurei", "Treguth", "Treital", "Taro", "Liduth", "Sozin",
    "Pibor", "Veseim", "Vekail", "Tratath", "Seikail", "Vatir", "Negos", "Tajom",
    "Dubaith", "Brulam", "Klaidraim", "Trakair", "Zobrom", "Peitar", "Zaikain", "Dopei",
    "Brotreth", "Gepath", "Vofais", "Dreitrei", "Hanur", "Zeivos", "Fabum", "Zerus",
    "Kaiseil", "Dreseth", "Trosteis", "Vibrath", "Klazeim", "Leipeis", "Mohas", "Daifos",
    "Tresus", "Tastor", "Neifir", "Drupair", "Gubreith", "Trosos", "Zabrath", "Vaife",
    "Nisai", "Netai", "Vubru", "Kugil", "Pilair", "Deirar", "Nirul", "Geibrein",
    "Zeistal", "Bristar", "Lohith", "Vivath", "Dumail", "Ziklim", "Datrein", "Zeike",
    "Daitrain", "Rastum", "Peiken", "Jailil", "Zailoth", "Seiris", "Distol", "Steizos",
    "Reije", "Feveil", "Trizeim", "Nafail", "Doro", "Johus", "Meteim", "Mejin",
    "Vuheis", "Pevum", "Betom", "Puklo", "Reiden", "Tetreil", "Goham", "Nonom",
    "Bromeith", "Kledeim", "Heilum", "Rimam", "Klebeth", "Laibu", "Kimon", "Ruron",
    "Vukas", "Kobru", "Zaihos", "Kumei", "Fapen", "Brojaim", "Meikei", "Tefes",
    "Kifein", "Tedrim", "Beisus", "Bestur", "Heinas", "Taikel", "Saisoth", "Butreim",
    "Gedum", "Meife", "Humeth", "Gutron", "Fahil", "Drotrun", "Vaigal", "Dabrul",
    "Nigim", "Seitreth", "Fatrun", "Klaidrail", "Hukeim", "Medril", "Regaim", "Drapam",
    "Duzeil", "Kuneim", "Truroth", "Beivus", "Fedraim", "Riklos", "Soki", "Tetas",
    "Kazeir", "Dreisus", "Gohel", "Zubreim", "Tezom", "Beseith", "Zilam", "Torair",
    "Gobri", "Vojos", "Dudor", "Baikan", "Veimon", "Habro", "Meklor", "Meilil",
    "Laizaim", "Trizath", "Peidrir", "Turath", "Dreikil", "Peimoth", "Bamol", "Kesur",
    "Zepeith", "Gugeim", "Breihum", "Truru", "Hufal", "Klaikein", "Dapeith", "Paibruth",
    "Bruvos", "Bodein", "Valeir", "Deistar", "Bihus", "Jazor", "Stubis", "Kover",
    "Hubral", "Naidith", "Dabos", "Jotais", "Trudeth", "Zubreil", "Nodral", "Faleis",
    "Gilan", "Litraith", "Traikleth", "Droraith", "Rege", "Stijeth", "Taifem", "Vatres",
    "Pibraim", "Tribrer", "Juklum", "Ninul", "Luzus", "Reises", "Putith", "Miklel",
    "Traizi", "Teibra", "Nedir", "Klefein", "Dritreis", "Drileir", "Treidrem", "Klagen",
    "Jostei", "Paipol", "Rana", "Gafein", "Seimom", "Fifuth", "Lajith", "Dusaith",
    "Bebrir", "Festai", "Breiputh", "Fimais", "Meleil", "Giben", "Dustil", "Vetrar",
    "Pitath", "Fotur", "Brabreith", "Hujin", "Nedral", "Tugeim", "Vobraim", "Konen",
    "Brejun", "Giklais", "Traibul", "Vozei", "Pairun", "Zanem", "Gejir", "Bristeith",
    "Sudreir", "Veketh", "Brovaith", "Stolis", "Faife", "Zeihos", "Zedail", "Trubar",
    "Dujein", "Brudul", "Zipul", "Beista", "Brejail", "Beimoth", "Nehain", "Klizis",
    "Rekas", "Tutro", "Neiteim", "Guse", "Traistos", "Butun", "Lebos", "Fubu",
    "Raiklim", "Drubron", "Paitrel", "Japon", "Brozein", "Godeith", "Breijith", "Jaku",
    "Heiduth", "Jaizith", "Drotron", "Traiklo", "Klafeim", "Pidal", "Stostuth", "Puhaith",
    "Zemol", "Drubril", "Vetreth", "Faitri", "Rojus", "Braikes", "Zaijan", "Pomum",
    "Brasir", "Kluham", "Stadrim", "Dretreim", "Lapur", "Troka", "Kitrain", "Hodeith",
    "Geisoth", "Drabrar", "Pairoth", "Zezas", "Lavul", "Mefer", "Neinuth", "Ribam",
    "Seli", "Kleipeim", "Pivos", "Beineim", "Trupu", "Mavuth", "Robran", "Mainun",
    "Neikus", "Datrir", "Bidros", "Trati", "Kaiheim", "Vefeis", "Rupim", "Pifaith",
    "Rotrun", "Tasei", "Lehain", "Megeim", "Lopom", "Fujeth", "Steiguth", "Kegeim",
    "Kopol", "Brahon", "Dritreth", "Didaith", "Bririth", "Konas", "Mizon", "Veikoth",
    "Satrur", "Drezus", "Votan", "Heidrei", "Kledan", "Keitrer", "Brebaith", "Laitras",
    "Neitrir", "Gitrair", "Gostoth", "Bofel", "Klezair", "Nudam", "Dailain", "Peho",
    "Feimein", "Muvai", "Steifon", "Saklor", "Veiveim", "Tidril", "Klofun", "Petin",
    "Tremai", "Loveth", "Stunom", "Gunir", "Vaizul", "Jitam", "Subrir", "Fokes",
    "Honal", "Gadru", "Lidrim", "Drofoth", "Paitais", "Diba", "Litul", "Kujaim",
    "Soklul", "Pailun", "Dotrath", "Gotroth", "Fatos", "Stokis", "Gika", "Klabin",
    "Mesain", "Jiteith", "Steluth", "Netith", "Zadeil", "Dragas", "Maku", "Nibran",
    "Traisail", "Lobro", "Drajin", "Jeirein", "Pefoth", "Ridrar", "Vuho", "Kaitror",
    "Zupir", "Jadai", "Stedur", "Maklis", "Libim", "Jutreth", "Bronil", "Dreidir",
    "Difis", "Ropam", "Baiseil", "Nunom", "Huste", "Beimus", "Keten", "Truza",
    "Dreitem", "Lihil", "Baireis", "Zegor", "Peikoth", "Seizain", "Teipaim", "Ludreth",
    "Zubri", "Nastaim", "Pomais", "Rutil", "Mugam", "Gostail", "Fedreim", "Pojum",
    "Druji", "Daidro", "Stulum", "Faijo", "Motum", "Zaipel", "Vibril", "Jabrom",
    "Lemeith", "Bazi", "Keigam", "Todail", "Gahil", "Voheith", "Mivom", "Troham",
    "Brodrath", "Heklor", "Reibrai", "Haibrair", "Jupain", "Staidres", "Gakler", "Voveis",
    "Kareith", "Taher", "Heilal", "Paizaim", "Zerair", "Daihail", "Stebi", "Fezor",
    "Tekain", "Faivith", "Dreiheth", "Vahuth", "Tefail", "Zuzos", "Gaisi", "Brezath",
    "Pevul", "Bovom", "Vudreis", "Kibrail", "Geihel", "Tulail", "Drizath", "Lumen",
    "Bevein", "Geibru", "Seful", "Steiser", "Femar", "Mibrel", "Klatith", "Futrei",
    "Faidul", "Jaibeis", "Letas", "Sestail", "Nihai", "Draikul", "Raifo", "Puzom",
    "Juklem", "Klula", "Sobos", "Fira", "Virem", "Zodun", "Haibrum", "Hama",
    "Saizem", "Stateth", "Meilath", "Klitoth", "Givor", "Resti", "Mutin", "Vokus",
    "Stotril", "Klaistes", "Fofeth", "Maidis", "Stokleim", "Nevil", "Brefi", "Rakeith",
    "Mikleith", "Brinar", "Dreigan", "Gabei", "Pidran", "Trinais", "Zatrai", "Brefim",
    "Fopai", "Zaimun", "Hagom", "Traheil", "Hedath", "Luklem", "Kebrel", "Duklai",
    "Mistis", "Renoth", "Zahai", "Mukur", "Letri", "Drezaim", "Histaith", "Budeir",
    "Neitrais", "Heitail", "Nojos", "Drakleir", "Sunin", "Kaidrath", "Pivar", "Zenai",
    "Stukim", "Perith", "Stesor", "Bemeith", "Bedrem", "Draven", "Peijos", "Zista",
    "Mosin", "Pegaith", "Sotri", "Liser", "Taifeil", "Nubeith", "Klepon", "Bodur",
    "Kogom", "Broseir", "Klaijail", "Kaipair", "Vaikleis", "Zaibrin", "Hudith", "Kika",
    "Traisaith", "Meikai", "Dojam", "Mukol", "Bitom", "Mesein", "Gofom", "Baves",
    "Baiban", "Podror", "Zatral", "Jaifin", "Braiheith", "Taineim", "Stifuth", "Zapus",
    "Mufor", "Gekleis", "Kovo", "Hules", "Diheis", "Traijon", "Gojum", "Taisai",
    "Lezein", "Saimon", "Zakom", "Ruzan", "Ruvum", "Stadai", "Rorel", "Keijun",
    "Zona", "Fepis", "Justeis", "Gaimuth", "Pujom", "Broklum", "Nogin", "Peistair",
    "Fedroth", "Nepom", "Disan", "Kizeim", "Gedair", "Titrath", "Sidrais", "Taitir",
    "Rairun", "Pisti", "Hakli", "Rape", "Motrin", "Peidu", "Baise", "Heisan",
    "Klikai", "Juvir", "Timuth", "Rigar", "Rovain", "Zunor", "Kibun", "Draitrol",
    "Hakleir", "Trakom", "Truvu", "Heidol", "Nabra", "Rezim", "Reneil", "Lejai",
    "Jikeim", "Hosair", "Raidruth", "Leizus", "Seilen", "Dreifo", "Dikles", "Brazi",
    "Divith", "Kebru", "Rebrai", "Rotrail", "Vebul", "Klodeim", "Bailaith", "Traiza",
    "Paidan", "Manil", "Neitreis", "Zobram", "Palen", "Feiklain", "Pairis", "Klemes",
    "Tredum", "Mutain", "Hodram", "Zoker", "Heimum", "Drizeis", "Fadem", "Hadra",
    "Mudril", "Bripain", "Luki", "Brabul", "Fakith", "Jeklu", "Meras", "Zaibril",
    "Daizen", "Resar", "Zajom", "Bihis", "Fotair", "Paizoth", "Keben", "Peimom",
    "Leidon", "Radur", "Hejaith", "Hosum", "Daistar", "Daidruth", "Zibor", "Sebron",
    "Brulon", "Totas", "Rizaith", "Getrem", "Meijeir", "Feihen", "Puhin", "Reirein",
    "Gostar", "Tora", "Maimun", "Vojei", "Gusan", "Noputh", "Beivath", "Kaitran",
    "Bruvel", "Kinul", "Sahal", "Draigem", "Rabram", "Didai", "Leilas", "Brehan",
    "Brukleim", "Tradrai", "Fuhein", "Saisar", "Brikleir", "Reklum", "Baitreil", "Klebren",
    "Hobeil", "Mijal", "Peipeir", "Drozeil", "Zogum", "Kiguth", "Doban", "Zojir",
    "Gedrim", "Vuvaim", "Febrer", "Gebres", "Zimaith", "Kejo", "Brogaith", "Drometh",
    "Deifeir", "Teigeim", "Kakes", "Kedo", "Mabroth", "Haikam", "Bomoth", "Tikai",
    "Hovail", "Togem", "Vobon", "Brineith", "Vetrein", "Hujain", "Jidru", "Vistis",
    "Vehum", "Staivim", "Klareil", "Gasaim", "Geidrein", "Feigei", "Traitrem", "Rovuth",
    "Klosais", "Sezair", "Stusem", "Drinaim", "Fufith", "Meidu", "Fafith", "Timail",
    "Seijon", "Kustaith", "Tretrein", "Traidur", "Keivin", "Muzin", "Gamu", "Bude",
    "Deibres", "Virein", "Poseil", "Zabris", "Binan", "Jeizam", "Klihe", "Namem",
    "Braijan", "Vudail", "Pomin", "Dusil", "Trurel", "Deijei", "Geibo", "Gukos",
    "Bikor", "Treibra", "Robrais", "Kimal", "Trales", "Debaim", "Kaizor", "Maizath",
    "Teigun", "Bradom", "Zeizol", "Trikla", "Traibrain", "Godrein", "Klainis", "Feisais",
    "Takon", "Drobus", "Vaseth", "Statraith", "Tofam", "Zaikein", "Gosus", "Keklais",
    "Baiklom", "Steibeir", "Bahes", "Taiseir", "Notrul", "Vura", "Kazul", "Sobron",
    "Triza", "Stobir", "Hehain", "Peisun", "Trustir", "Tage", "Bamain", "Punir",
    "Kaidril", "Braidruth", "Kluti", "Natair", "Nelor", "Jomeim", "Fanai", "Pubain",
    "Subul", "Leibim", "Bodrul", "Museil", "Kaiteith", "Tregin", "Lezil", "Geiger",
    "Faisar", "Dove", "Trodas", "Zosor", "Zoseth", "Pezus", "Sihum", "Madeith",
    "Zaklain", "Brupoth", "Gozos", "Bilil", "Tudrur", "Taitrem", "Brozai", "Honil",
    "Deizeth", "Broper", "Sagam", "Tratraim", "Trirol", "Jonoth", "Vidruth", "Bretein",
    "Brupais", "Nunuth", "Jozen", "Zasom", "Pohai", "Fivun", "Guvuth", "Laile",
    "Brigim", "Navus", "Pemem", "Neimo", "Pepes", "Pipeith", "Hozas", "Leipas",
    "Traistal", "Sehais", "Zaifen", "Lokel", "Potei", "Gaistaim", "Guzun", "Paimon",
    "Breihim", "Zideil", "Rageth", "Drutreith", "Bebain", "Piklen", "Breidrir", "Kodrath",
    "Steisin", "Nija", "Vasaith", "Raileis", "Zuvol", "Tripul", "Stuzoth", "Pakom",
    "Vapei", "Midrar", "Dridrun", "Kupen", "Kapo", "Zaklus", "Trubroth", "Bistil",
    "Roga", "Drogel", "Bijir", "Brabrir", "Bijeis", "Devel", "Bomaith", "Trabeth",
    "Saigos", "Betem", "Keihol", "Febath", "Nohi", "Mubraim", "Taman", "Trubros",
    "Kaimel", "Nabaith", "Stujais", "Sutrei", "Tuvain", "Fabein", "Klineith", "Hedon",
    "Keirun", "Maheim", "Judreis", "Jusein", "Saijer", "Klustas", "Datrul", "Seisos",
    "Dreman", "Bapul", "Stitrail", "Kaifair", "Goklith", "Mosteim", "Fohu", "Ladreim",
    "Kusteth", "Kosil", "Beikleil", "Neirus", "Kanir", "Fotraith", "Dreitein", "Moklil",
    "None", "Trubra", "Kukim", "Bronel", "Feibil", "Vaidrith", "Niraim", "Jidrai",
    "Peizum", "Bigar", "Staikol", "Naitur", "Mojis", "Vokis", "Staikor", "Seifis",
    "Breiteth", "Gijail", "Dibam", "Libu", "Hakei", "Pofon", "Kistom", "Bibrom",
    "Vefim", "Jekair", "Neimi", "Mufan", "Teipan", "Puklor", "Brotaith", "Ligil",
    "Varam", "Pekis", "Jiteil", "Brevuth", "Fanem", "Gaiguth", "Klevel", "Bainor",
    "Dobeith", "Zegim", "Veistir", "Saroth", "Bidein", "Staidrair", "Ludroth", "Vuzor",
    "Gudir", "Mebrol", "Branul", "Veirem", "Rikle", "Kumes", "Keitrol", "Fekur",
    "Nolum", "Neisu", "Feigi", "Jatrur", "Klotai", "Jajaim", "Klemein", "Gazu",
    "Dotrel", "Feizeith", "Keval", "Bipith", "Govol", "Bopi", "Hitis", "Nudeis",
    "Seinis", "Brubrun", "Kolon", "Haleil", "Zuvor", "Papaith", "Gemu", "Dosai",
    "Jidail", "Drugor", "Kleihon", "Rurei", "Peiten", "Luhe", "Hasain", "Kuhur",
    "Mifil", "Kliko", "Dapoth", "Ruhem", "Raiboth", "Junoth", "Donim", "Peidur",
    "Drainer", "Miklem", "Reisuth", "Steikla", "Treidus", "Zifar", "Steva", "Nohon",
    "Naitoth", "Kipur", "Keireith", "Todrai", "Stibran", "Kabos", "Studrai", "Bailis",
    "Drobath", "Deitrei", "Rejom", "Pugis", "Lodril", "Drusan", "Bemaith", "Reilain",
    "Kaitair", "Leste", "Rokus", "Klelaim", "Kaisi", "Gaitron", "Hotol", "Jazun",
    "Tritrein", "Rebrus", "Bifai", "Hupul", "Tebeis", "Jojail", "Viklam", "Maiduth",
    "Sozath", "Pairom", "Pefein", "Sizair", "Gibaim", "Dretrin", "Taimuth", "Diklum",
    "Kitreir", "Jaiha", "Haibrel", "Jeifol", "Vikaith", "Mavith", "Misair", "Mirum",
    "Bifail", "Nerath", "Jeigi", "Huklal", "Jezeth", "Vubis", "Meileil", "Suklur",
    "Maihas", "Kupon", "Disir", "Jagir", "Brezein", "Mogeis", "Haisail", "Vaivath",
    "Neinon", "Boneis", "Tuden", "Jotam", "Beiseis", "Gisam", "Stoda", "Mohis",
    "Nestam", "Breidum", "Kaihor", "Sanan", "Tronir", "Rises", "Mitir", "Leibain",
    "Vaklaim", "Heda", "Staipeis", "Taheith", "Tefath", "Draikus", "Leibral", "Logem",
    "Zazun", "Rumun", "Dinon", "Heneth", "Trester", "Vuzel", "Baru", "Gusir",
    "Traidor", "Hebaith", "Peijo", "Dreitrer", "Jiklais", "Drazar", "Bramail", "Steifum",
    "Tekleir", "Dremir", "Stotris", "Zafeis", "Levir", "Meha", "Saigas", "Lekei",
    "Rupe", "Dreres", "Brebrim", "Pena",
};

}  // namespace

std::span<const std::string_view> name_wordlist() { return kNames; }

}  // namespace vrcap
