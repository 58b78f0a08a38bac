"""Regenerate the committed test fixtures.

Drives the real pipeline in record mode against a scripted provider, so the
cassette keys are exactly the ones replay will compute.  Produces:

    tests/fixtures/corpus.json          three-tale manifest
    tests/fixtures/cassette.jsonl       committed model responses
    tests/fixtures/remix_session.json   draft + hint used by remix tests
    tests/fixtures/golden/*.json        frozen pipeline outputs

Run from the repo root:  python3 scripts/build_fixtures.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from storymix.analysis.pipeline import run_story_pipeline
from storymix.analysis.strategies import locate_cue
from storymix.analysis.turning_points import PromptClassifier
from storymix.arc.valence import ValenceLexicon
from storymix.config import bundled_lexicon_path
from storymix.corpus.models import SOURCE_DRAFT, Draft, ingest_story
from storymix.gateway import Cassette, Gateway, render
from storymix.remix.workspace import RemixWorkspace

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# --------------------------------------------------------------------------
# The three public-domain tales (original retellings).  One paragraph per
# story block; paragraph boundaries double as the scripted segmentation.
# --------------------------------------------------------------------------

CINDERELLA = [
    # b0
    "The wife of a rich man fell ill, and when she felt that her end was near she "
    "called her only daughter to her bedside and said, Dear child, be good and "
    "patient, and heaven will help you. Then she closed her eyes and died. Every "
    "day the girl went out and wept at her mother's grave, and she remained good "
    "and patient through the winter and through the spring. Within a year the "
    "rich man took another wife, and the new wife brought with her two daughters "
    "of her own, fair of face but proud of heart. Then began a sorry time for the "
    "poor child. They took away her pretty clothes, dressed her in an old grey "
    "smock, and laughed at her as they led her into the kitchen. There she had to "
    "work from morning until night, and in the evening, when she was tired, there "
    "was no bed for her at all; she slept among the cinders on the hearth. And "
    "because she always looked dusty and grey, they called her Cinderella.",
    # b1
    "From that day she carried water, lit the fires, cooked, and washed, while "
    "the sisters invented new torments, strewing peas and lentils into the ashes "
    "so that she had to sit and pick them out again. Still, patience, she "
    "whispered to herself each night, heaven has not forgotten me. She planted a "
    "hazel branch on her mother's grave and watered it with her tears, and it "
    "grew into a handsome tree. Three times a day Cinderella went and sat beneath "
    "it, and a little white bird always came to the tree; if she spoke a wish "
    "aloud, the bird threw down to her what she had wished for. So the months "
    "passed, grey with ash indoors and green with new leaves at the grave, and "
    "the little bird watched over her while the household slept.",
    # b2
    "It happened that the King proclaimed a festival that should last three days, "
    "and all the fair maidens of the land were invited, so that his son might "
    "choose himself a bride. When the two sisters heard that they too were to "
    "appear, they were delighted, and called Cinderella to comb their hair and "
    "polish their buckles. She obeyed, but she wept, for she too would gladly "
    "have gone to the dance, and she begged her stepmother to allow it. You, "
    "Cinderella? said the stepmother. You are covered in dust and dirt, and you "
    "would go to the festival? Then she threw a dishful of lentils into the ashes "
    "and said, If you have picked them all out in two hours, you shall go with "
    "us. But when the lentils were gathered, she only laughed and said, You have "
    "no gown and you cannot dance; we should be ashamed of you. And she hurried "
    "away with her two proud daughters.",
    # b3
    "Cinderella went to the hazel tree at her mother's grave and cried, Shiver "
    "and quiver, little tree, silver and gold throw down over me. Then the little "
    "white bird threw down a gown glimmering with silver and gold, and slippers "
    "embroidered with silk and silver. She dressed herself with haste, and the "
    "grey smock lay forgotten on the hearth. But as she turned to go, a thought "
    "pressed upon her like a hand on her shoulder: the charm would not outlast "
    "the night, and she must be home before the clock struck twelve. The evening "
    "air was cool on her face as she went down to the palace, and the lights of "
    "the great hall rose before her like a field of burning stars, and music "
    "spilled out of the open doors into the dark.",
    # b4
    "In the great hall the King's son came to meet her, took her by the hand, and "
    "danced with her, and he would dance with no other maiden. When any came to "
    "claim her he said, This is my partner. She danced till evening became night, "
    "and the whole court wondered, for no one knew her, and her own stepsisters "
    "stood not three steps away and never guessed. The King's son asked her name, "
    "and she only smiled; he asked whose daughter she was, and she turned the "
    "question aside like a dancer turning on her heel. And whenever another "
    "suitor bowed before her the prince said again, This is my partner, until the "
    "whole hall had heard it and made way.",
    # b5
    "But when the clock began to strike, she remembered the warning, and at the "
    "first stroke of twelve she slipped from his hand and was gone. The prince "
    "stood astounded in the middle of the dance, and knew not what to say, for "
    "the hall was full and yet empty of her. She ran down the great stair, and "
    "because the steps had been smeared with pitch to catch her, her left slipper "
    "of gold stuck fast and stayed behind. The prince took it up, small and "
    "golden and still warm, and he said to himself that no other foot in the "
    "kingdom would fit it. Who she was, where she lived, whither she had run, he "
    "could not tell, and no one in the court could name her.",
    # b6
    "The next morning the King's son had it proclaimed that he would marry her "
    "whose foot fitted the golden slipper. The two sisters were glad, for they "
    "had beautiful feet, or so they believed. The eldest cut off a toe and forced "
    "her foot into the shoe, but as she rode away the white doves on the hazel "
    "tree called out, Turn and look, turn and look, there is blood within the "
    "shoe. The second cut off a piece of her heel, and the doves called the same "
    "warning, and both were brought back in disgrace. Then Cinderella drew her "
    "small foot out of its clumsy wooden shoe, and the golden slipper fitted as "
    "if it had been made for her, and when she stood up the prince looked into "
    "her face and knew the true bride. He set her before him on his horse, and "
    "the doves sang above them all the way to the palace.",
]

FROG_PRINCE = [
    # b0
    "In old times, when wishing still helped, there lived a King whose youngest "
    "daughter was so beautiful that the sun itself was astonished whenever it "
    "shone on her face. Close by the King's castle lay a great dark forest, and "
    "in the forest, under an old linden tree, was a cool well. When the day was "
    "hot the King's child went out into the forest and sat down by the side of "
    "the well, and when she was bored she took a golden ball, threw it up on "
    "high, and caught it; and this ball was her favorite plaything. The water "
    "glittered, the leaves moved softly, and the afternoon belonged entirely to "
    "her and the bright arc of the golden ball.",
    # b1
    "Now it so happened that the golden ball did not fall into her little hand, "
    "but on the ground beyond, and rolled straight into the water. The well was "
    "deep, so deep that the bottom could not be seen, and the King's daughter "
    "began to cry, and cried louder and louder, and could not be comforted. As "
    "she wept, a voice called to her, What ails you, King's daughter? You weep so "
    "that even a stone would show pity. She looked round to the place whence the "
    "voice came, and saw a frog stretching forth its big, ugly head from the "
    "water. If you will love me and let me be your companion, said the frog, and "
    "eat from your little golden plate and sleep in your little bed, I will bring "
    "you your golden ball up again.",
    # b2  (deliberately under the 50-word floor)
    "The princess promised everything the frog asked, but in her heart she "
    "thought, How can a silly frog talk like a man? He can stay in his well with "
    "the other frogs, and croak.",
    # b3
    "The frog dove down and brought up the golden ball, and the princess "
    "snatched it and ran home, forgetting him entirely. But the next day, as she "
    "sat at table with the King and all the court, something came creeping, "
    "splish splash, splish splash, up the marble stair, and knocked at the door "
    "and cried, Princess, youngest princess, open the door for me. She ran to see "
    "who it was, and when she saw the frog she slammed the door in haste and sat "
    "down again, quite pale. The King saw plainly that her heart was beating "
    "violently, and she told him all. Then said the King, That which thou hast "
    "promised must thou perform. Go and let him in.",
    # b4
    "So she opened the door, and the frog hopped in after her, step by step, to "
    "her chair, and sat at last upon the table. He ate from her little golden "
    "plate, and every morsel she herself took stuck in her throat. The court "
    "watched, the King watched, and the princess sat straight as a candle and "
    "wished herself a hundred miles away. At last the frog said, I have eaten and "
    "am satisfied; now I am tired, carry me into your little room and make your "
    "little bed ready. The princess began to weep, for she was afraid of the cold "
    "frog, but the King grew angry and said, He who helped thee when thou wert in "
    "trouble ought not afterwards to be despised by thee.",
    # b5
    "She took the frog up with two fingers, carried him upstairs, and set him in "
    "a corner. But when she was in bed he crept to her and said, I am tired, lift "
    "me up or I will tell thy father. Then she was terribly angry, and seized him "
    "and threw him with all her might against the wall. Now you will be quiet, "
    "horrid frog, said she. But when he fell down he was no frog, but a King's "
    "son with kind and beautiful eyes, who told her how he had been bewitched by "
    "a wicked witch, and how no one could have freed him from the well but she "
    "herself. By her father's will he became her dear companion, and they fell "
    "asleep to the sound of the night wind in the linden tree.",
    # b6
    "In the morning a carriage came driving up with eight white horses, with "
    "white ostrich feathers on their heads, and behind stood the young King's "
    "servant, faithful Henry. Faithful Henry had been so unhappy when his master "
    "was changed into a frog that he had caused three iron bands to be laid round "
    "his heart, lest it should burst with grief. On the road a cracking sounded "
    "behind them, and the prince cried, Henry, the carriage is breaking. No, "
    "master, it is not the carriage, it is a band from my heart, which was put "
    "there in my great pain when you were a frog. Twice more the cracking came, "
    "and each time it was only the bands from my heart springing free, because "
    "his master was redeemed and happy.",
]

RAPUNZEL = [
    # b0
    "There were once a man and a woman who had long wished for a child. At the "
    "back of their house was a little window from which a splendid garden could "
    "be seen, full of the finest vegetables and flowers; but it was surrounded by "
    "a high wall, and no one dared enter, for it belonged to a sorceress of great "
    "power. One day the woman stood at the window looking down at a bed of the "
    "freshest rampion, and such a craving seized her that she said to her "
    "husband, If I cannot eat some of the rampion from the garden behind our "
    "house, I shall die. The man, who loved her, thought, Sooner than let my wife "
    "die, I will fetch it, cost what it may; and he climbed over the wall at "
    "twilight and hastily snatched a handful of rampion.",
    # b1
    "But as he turned, the sorceress stood before him. How dare you climb into my "
    "garden and steal my rampion like a thief? said she with an angry look. You "
    "shall pay dearly. He begged for mercy and told her of his wife's craving, "
    "and the sorceress softened her voice and said, Take as much as you will, "
    "only give me the child your wife shall bring into the world. The man in his "
    "terror consented to everything. When the child was born the sorceress "
    "appeared at once, gave her the name Rapunzel, and took her away. Rapunzel "
    "grew into the most beautiful child under the sun, and when she was twelve "
    "years old the sorceress shut her into a tower that lay in a forest and had "
    "neither stairs nor door, only a little window quite at the top.",
    # b2
    "When the sorceress wished to enter, she stood below and cried, Rapunzel, "
    "Rapunzel, let down your hair. Rapunzel had magnificent long hair, fine as "
    "spun gold, and when she heard the voice she unfastened her braids, wound "
    "them round a hook of the window, and let them fall twenty ells down, and "
    "the sorceress climbed up by them. After a year or two a King's son rode "
    "through the forest and passed by the tower, and heard a song so sweet that "
    "he halted and listened; it was Rapunzel, singing to pass her solitude. He "
    "wished to climb up to her and looked for a door, but none was to be found. "
    "So he hid himself behind a tree, saw how the old woman was drawn up, and "
    "the next evening called the same words and climbed by the shining braids. "
    "The witch knew nothing of it.",
    # b3
    "Rapunzel was terrified at first, for her eyes had never seen a man, but the "
    "King's son spoke to her kindly, and soon she lost her fear. They agreed that "
    "he should come every evening, for the old woman came by day. Bring with you "
    "each time a skein of silk, said Rapunzel, and I will weave a ladder of it, "
    "and when it is ready I will climb down and we will ride away together. The "
    "plan grew, skein by skein, a secret measured in evenings. But one day "
    "Rapunzel, thinking of nothing, said to the sorceress, Tell me, Dame Gothel, "
    "how is it that you are so much heavier to draw up than the young King's "
    "son? He reaches me in a moment. Ah, you wicked child, cried the sorceress, "
    "what do I hear you say! I thought I had hidden you from all the world.",
    # b4
    "In her anger she clutched Rapunzel's beautiful tresses, seized a pair of "
    "shears, and snip, snap, the lovely braids lay on the ground. And she was so "
    "pitiless that she carried poor Rapunzel into a desert place, where she had "
    "to live in great grief and misery. That same evening the sorceress fastened "
    "the severed braids to the hook and let them down, and the King's son "
    "climbed, but above he found not his dearest Rapunzel but the sorceress, who "
    "mocked him: The cat has got the bird, and will scratch out your eyes as "
    "well. Beside himself with pain, he leaped from the tower; he escaped with "
    "his life, but the thorns into which he fell pierced his eyes. Blind, he "
    "wandered in the wood, ate nothing but roots and berries, and did nothing "
    "but lament and weep for the loss of his dearest wife.",
    # b5
    "So he roamed in misery for some years, and came at last to the desert place "
    "where Rapunzel lived in wretchedness with the twins who had been born to "
    "her, a boy and a girl. He heard a voice that seemed familiar to him, and he "
    "went towards it, and when he came near, Rapunzel knew him, and fell on his "
    "neck and wept. Two of her tears fell upon his eyes, and then his eyes grew "
    "clear again, and he could see with them as before. He led her to his "
    "kingdom, where they were joyfully received, and they lived long afterwards, "
    "happy and contented, and the tower and the desert and the long years of "
    "weeping sank slowly into the telling of an old story.",
]

TALES = [
    ("Cinderella", CINDERELLA),
    ("The Frog Prince", FROG_PRINCE),
    ("Rapunzel", RAPUNZEL),
]

SHORT_BLOCK = ("The Frog Prince", 2)  # deliberately under 50 words

# Candidate segmentation sent back by the scripted model: the frog tale's
# block 3 carries a one-word corruption so the repair path runs end to end.
CORRUPTION = ("The Frog Prince", 3, "marble", "granite")

TITLES = {
    "Cinderella": [
        "Grief and the New Household",
        "Patience by the Hazel Tree",
        "The Festival Denied",
        "A Gown of Silver and Gold",
        "The Unknown Partner",
        "Flight at the Stroke of Twelve",
        "The Slipper Finds Its Owner",
    ],
    "The Frog Prince": [
        "The Golden Ball at the Well",
        "A Voice from the Water",
        "A Promise Made Lightly",
        "The Knock at the Door",
        "Supper with an Unwanted Guest",
        "The Frog Against the Wall",
        "Faithful Henry's Iron Bands",
    ],
    "Rapunzel": [
        "The Craving and the Wall",
        "A Child for a Handful",
        "The Song and the Braids",
        "A Ladder of Silk Betrayed",
        "Exile and the Thorns",
        "Tears That Heal",
    ],
}

SUMMARIES = {
    "Cinderella": [
        "A widow's daughter is reduced to a servant by her new stepfamily.",
        "Cinderella tends a hazel tree on the grave and is watched over by a white bird.",
        "The royal festival is announced and Cinderella is mocked and left behind.",
        "The tree's bird gives Cinderella a shining gown and slippers, with a midnight limit.",
        "The prince dances only with the unknown maiden and the court cannot name her.",
        "Cinderella flees at midnight and leaves a golden slipper on the pitch-smeared stair.",
        "The slipper exposes the sisters' deceit and the prince finds his true bride.",
    ],
    "The Frog Prince": [
        "The youngest princess plays with her golden ball beside a forest well.",
        "The ball sinks into the well and a frog offers help for a promise.",
        "The princess promises carelessly, privately dismissing the frog.",
        "The frog claims his promise at the castle and the King enforces it.",
        "The princess endures the frog at her table under her father's eye.",
        "Thrown against the wall, the frog becomes a prince and the spell breaks.",
        "A carriage arrives and faithful Henry's iron bands crack with joy.",
    ],
    "Rapunzel": [
        "A craving for rampion drives a husband over the sorceress's wall.",
        "The stolen child is named Rapunzel and shut into a doorless tower.",
        "A prince discovers the braid-summons and climbs to Rapunzel in secret.",
        "The lovers' silk-ladder plan is undone by a careless question.",
        "Rapunzel is exiled and the blinded prince wanders the wild.",
        "Her tears restore his sight and the two return to his kingdom.",
    ],
}

PROTAGONISTS = {
    "Cinderella": "Cinderella",
    "The Frog Prince": "The youngest princess",
    "Rapunzel": "Rapunzel",
}

# (name, [dimensions], explanation, [cues]); cues marked with a leading "!"
# are deliberate hallucinations that must fail grounding.
STRATEGIES: dict[tuple[str, int], list[tuple[str, list[str], str, list[str]]]] = {
    ("Cinderella", 0): [
        (
            "Sympathetic Orphan Opening",
            ["Character", "Emotional"],
            "The story opens on loss and mistreatment, binding the reader's sympathy "
            "to the heroine before the plot proper begins.",
            ["wept at her mother's grave", "slept among the cinders"],
        ),
        (
            "Economical Exposition",
            ["Pacing"],
            "Years of family history are compressed into a few sentences so the tale "
            "reaches its central conflict almost immediately.",
            ["Within a year"],
        ),
    ],
    ("Cinderella", 1): [
        (
            "Internal Monologue",
            ["Character"],
            "The heroine's private words make her patience and hope audible without "
            "narratorial commentary.",
            ["whispered to herself", "!her heart counted the hours"],
        ),
        (
            "Symbolism",
            ["Thematic"],
            "The hazel branch watered with tears grows into the source of later "
            "magic, making grief itself the root of grace.",
            ["watered it with her tears", "a little white bird"],
        ),
    ],
    ("Cinderella", 2): [
        (
            "Impossible Task Obstacle",
            ["Plot"],
            "The lentils flung into the ashes set a test designed to be unwinnable, "
            "sharpening the injustice the heroine faces.",
            ["threw a dishful of lentils into the ashes"],
        ),
        (
            "Dialogue for Characterization",
            ["Character", "Linguistic"],
            "The stepmother's refusal arrives in her own voice, letting cruelty "
            "characterize itself instead of being described.",
            ["You have no gown and you cannot dance"],
        ),
    ],
    ("Cinderella", 3): [
        (
            "Sensory Imagery",
            ["Linguistic"],
            "Concrete visual detail makes the magical gift vivid and tactile rather "
            "than abstractly reported.",
            ["glimmering with silver and gold", "embroidered with silk and silver"],
        ),
        (
            "Sudden Reversal of Fortune Through Magical Intervention",
            ["Plot"],
            "A single supernatural gift reverses the heroine's standing in one "
            "stroke, pivoting the story from misery toward hope.",
            ["threw down a gown"],
        ),
    ],
    ("Cinderella", 4): [
        (
            "Repetition for Emphasis",
            ["Linguistic"],
            "The prince's repeated claim is a drumbeat that seals the pair off from "
            "the whole court.",
            ["This is my partner"],
        ),
        (
            "Mysterious Stranger Allure",
            ["Engagement"],
            "No one at court can name the newcomer while the reader alone knows her, "
            "a gap that flatters and holds attention.",
            ["no one knew her"],
        ),
    ],
    ("Cinderella", 5): [
        (
            "Withholding Information",
            ["Information"],
            "The heroine's identity is deliberately kept from the prince and the "
            "court, heightening suspense and pulling the reader toward the reveal.",
            ["astounded", "knew not what to say"],
        ),
        (
            "Ticking Clock Deadline",
            ["Pacing", "Engagement"],
            "The midnight limit turns the ball into a race, compressing time and "
            "forcing a sudden, dramatic exit.",
            ["the first stroke of twelve"],
        ),
    ],
    ("Cinderella", 6): [
        (
            "Poetic Justice",
            ["Thematic"],
            "The sisters' self-mutilating deceit betrays itself while the despised "
            "heroine is exalted by the same test.",
            ["blood within the shoe"],
        ),
        (
            "Transformation Reveal",
            ["Plot"],
            "The fitting of the slipper converts hidden truth into public proof and "
            "resolves the central conflict.",
            ["knew the true bride"],
        ),
    ],
    ("The Frog Prince", 0): [
        (
            "Idyll Before Disruption",
            ["Emotional"],
            "An untroubled scene of play establishes a calm baseline so the coming "
            "loss lands harder.",
            ["golden ball", "cool well"],
        ),
        (
            "Fairy-Tale Setting Convention",
            ["Engagement"],
            "Familiar storybook scenery signals the genre contract and invites the "
            "reader into a known world.",
            ["great dark forest", "when wishing still helped"],
        ),
    ],
    ("The Frog Prince", 1): [
        (
            "Escalating Emotional Crescendo",
            ["Emotional"],
            "The princess's grief grows stage by stage until it summons an answer "
            "out of the well itself.",
            ["louder and louder"],
        ),
        (
            "Voice Before Body Introduction",
            ["Information"],
            "The helper is heard before he is seen, so curiosity precedes judgment "
            "of his ugly form.",
            ["What ails you, King's daughter?"],
        ),
    ],
    ("The Frog Prince", 2): [
        (
            "Internal Monologue",
            ["Character"],
            "Her private dismissal of the frog exposes the gap between her promise "
            "and her intent.",
            ["in her heart she thought"],
        ),
    ],
    ("The Frog Prince", 3): [
        (
            "Promise as Plot Engine",
            ["Plot"],
            "The bargain made at the well obligates every later scene, and the "
            "King's judgment turns a whim into law.",
            ["That which thou hast promised must thou perform"],
        ),
        (
            "Onomatopoeic Sound Texture",
            ["Linguistic"],
            "The creeping wet footsteps are rendered as sound, letting the reader "
            "hear the unwelcome guest before the door opens.",
            ["splish splash, splish splash"],
        ),
    ],
    ("The Frog Prince", 4): [
        (
            "Visceral Discomfort Detail",
            ["Emotional"],
            "Physical revulsion is rendered in bodily terms, making the princess's "
            "ordeal immediate.",
            ["every morsel she herself took stuck in her throat"],
        ),
        (
            "Status Symbol Irony",
            ["Thematic"],
            "The golden plate, emblem of privilege, becomes the stage for her "
            "humiliation.",
            ["little golden plate"],
        ),
    ],
    ("The Frog Prince", 5): [
        (
            "Violent Climactic Release",
            ["Plot"],
            "Pent-up disgust explodes in a single act that shatters the spell and "
            "resolves the conflict.",
            ["threw him with all her might against the wall"],
        ),
        (
            "Transformation Reveal",
            ["Plot"],
            "The frog's fall becomes a prince's rise, converting punishment into "
            "reward in one image.",
            ["kind and beautiful eyes"],
        ),
    ],
    ("The Frog Prince", 6): [
        (
            "Symbolism",
            ["Thematic"],
            "The iron bands around the servant's heart make grief a physical object "
            "that can crack and fall away.",
            ["three iron bands", "a band from my heart"],
        ),
        (
            "Denouement Decompression",
            ["Pacing"],
            "After the climax, the carriage ride releases tension slowly and "
            "carries the tale to rest.",
            ["eight white horses"],
        ),
    ],
    ("Rapunzel", 0): [
        (
            "Forbidden Desire Hook",
            ["Engagement"],
            "An impossible craving with a mortal stake hooks the reader in the "
            "first breath of the tale.",
            ["I shall die"],
        ),
        (
            "Twilight Threshold Atmosphere",
            ["Linguistic"],
            "The dim hour of the theft colors the act with secrecy and dread.",
            ["climbed over the wall at twilight"],
        ),
    ],
    ("Rapunzel", 1): [
        (
            "Ominous Bargain Foreshadowing",
            ["Information"],
            "The sorceress's calm acceptance of a terrible price warns the reader "
            "that the debt will one day be collected.",
            ["!a shadow crossed the garden wall"],
        ),
        (
            "Isolation Imagery",
            ["Linguistic"],
            "The tower without entrance makes the heroine's captivity absolute and "
            "visible.",
            ["neither stairs nor door"],
        ),
    ],
    ("Rapunzel", 2): [
        (
            "Incantation Refrain",
            ["Linguistic"],
            "The rhymed summons repeats like a charm, giving the tale its memorable "
            "heartbeat.",
            ["let down your hair"],
        ),
        (
            "Dramatic Irony",
            ["Information"],
            "The reader watches the prince learn the secret of the braids while the "
            "witch believes it safe, charging every visit with tension.",
            ["The witch knew nothing of it"],
        ),
    ],
    ("Rapunzel", 3): [
        (
            "Careless Word Betrayal",
            ["Plot"],
            "One unguarded question undoes the lovers' careful plan, pivoting the "
            "tale toward catastrophe.",
            ["how is it that you are so much heavier"],
        ),
        (
            "Slow Secret Industry",
            ["Pacing"],
            "The ladder grows one skein at a time, stretching hope across many "
            "evenings and measuring the lovers' patience.",
            ["a skein of silk", "skein by skein"],
        ),
    ],
    ("Rapunzel", 4): [
        (
            "Major Reversal Punishment",
            ["Plot"],
            "Both lovers lose everything in a single scene: she her hair and home, "
            "he his sight.",
            ["thorns into which he fell pierced his eyes"],
        ),
        (
            "Wasteland Wandering Motif",
            ["Thematic"],
            "Blind wandering among roots and berries is exile made bodily, the "
            "tale's dark night before restoration.",
            ["roots and berries"],
        ),
    ],
    ("Rapunzel", 5): [
        (
            "Healing Tears Resolution",
            ["Emotional"],
            "Grief itself restores what was destroyed, resolving the conflict with "
            "tenderness instead of force.",
            ["Two of her tears"],
        ),
        (
            "Recognition by Voice",
            ["Character"],
            "The blind prince knows his beloved by sound alone, proving a bond "
            "deeper than sight.",
            ["a voice that seemed familiar"],
        ),
    ],
}

# Strategies whose scripted categorize response returns three labels; the
# pipeline must truncate to two with a warning.
OVERCATEGORIZED = {"Violent Climactic Release": ["PLOT", "EMOTIONAL", "ENGAGEMENT"]}

TURNING_POINTS: dict[tuple[str, int], list[str]] = {
    ("Cinderella", 0): ["Opportunity"],
    ("Cinderella", 1): [],
    ("Cinderella", 2): ["Change of Plans"],
    ("Cinderella", 3): [],
    ("Cinderella", 4): ["Point of No Return"],
    ("Cinderella", 5): ["Major Setback"],
    ("Cinderella", 6): ["Climax"],
    ("The Frog Prince", 0): ["Opportunity"],
    ("The Frog Prince", 1): ["Change of Plans"],
    ("The Frog Prince", 2): [],
    ("The Frog Prince", 3): ["Point of No Return"],
    ("The Frog Prince", 4): [],
    ("The Frog Prince", 5): ["Climax"],
    ("The Frog Prince", 6): [],
    ("Rapunzel", 0): ["Opportunity"],
    ("Rapunzel", 1): ["Change of Plans"],
    ("Rapunzel", 2): [],
    ("Rapunzel", 3): ["Point of No Return"],
    ("Rapunzel", 4): ["Major Setback"],
    ("Rapunzel", 5): ["Climax"],
}

# Some adjectives fall outside the 50-word lexicon on purpose: block
# ("The Frog Prince", 2) has zero coverage and must go neutral.
ADJECTIVES: dict[tuple[str, int], list[str]] = {
    ("Cinderella", 0): ["sad", "lonely", "grieving"],
    ("Cinderella", 1): ["weary", "sad", "hopeful"],
    ("Cinderella", 2): ["anxious", "eager", "nervous"],
    ("Cinderella", 3): ["hopeful", "excited", "curious"],
    ("Cinderella", 4): ["amazed", "thrilled", "nervous"],
    ("Cinderella", 5): ["panicked", "desperate", "afraid"],
    ("Cinderella", 6): ["joyful", "loved", "overjoyed"],
    ("The Frog Prince", 0): ["cheerful", "content", "amused"],
    ("The Frog Prince", 1): ["devastated", "desperate", "sad"],
    ("The Frog Prince", 2): ["reluctant", "wary", "uneasy"],
    ("The Frog Prince", 3): ["embarrassed", "anxious", "ashamed"],
    ("The Frog Prince", 4): ["resentful", "bitter", "frustrated"],
    ("The Frog Prince", 5): ["startled", "amazed", "relieved"],
    ("The Frog Prince", 6): ["content", "peaceful", "grateful"],
    ("Rapunzel", 0): ["curious", "eager", "content"],
    ("Rapunzel", 1): ["helpless", "sad", "lonely"],
    ("Rapunzel", 2): ["lonely", "hopeful", "curious"],
    ("Rapunzel", 3): ["loved", "happy", "hopeful"],
    ("Rapunzel", 4): ["heartbroken", "miserable", "hopeless"],
    ("Rapunzel", 5): ["overjoyed", "grateful", "loved"],
}

# --------------------------------------------------------------------------
# Remix fixtures: a small draft, the strategies steered into it, and the
# scripted generations.
# --------------------------------------------------------------------------

DRAFT_TITLE = "The Market Key"
DRAFT_BODY = "\n\n".join(
    [
        "Mara found the key on a Saturday, half buried between a crate of oranges "
        "and the cobblestones of the old market square. It was heavy for its "
        "size, dark iron, with three teeth like a crooked grin. The fruit seller "
        "shrugged when she held it up, and so she put it in her coat pocket and "
        "walked home the long way, past the shuttered chapel and the canal.",
        "All week the key sat on her desk beside her pencils, and all week Mara "
        "invented doors for it. A cellar under the chapel. A garden gate grown "
        "over with ivy. The narrow blue door behind the bakery that nobody ever "
        "used. On Friday she took the key to old Tomas, who had repaired locks "
        "in the town for fifty years, and asked him what it opened.",
        "Tomas turned the key over twice in his spotted hands and went very "
        "still. Then he closed Mara's fingers around it and told her to keep it "
        "hidden, and to come back when the clock tower rang nine, and to tell "
        "no one else about it, not even her mother.",
    ]
)

HINT = "Let readers grasp the hidden truth while the protagonist remains unaware."

REVISE_RAW = (
    "Mara found the key on a Saturday, half buried between a crate of oranges "
    "and the cobblestones of the old market square. She did not tell the fruit "
    "seller what she had seen stamped on its bow, and she did not quite tell "
    "herself either; she only closed her hand around the dark iron until its "
    "three teeth bit her palm like a crooked grin. The market went on shouting "
    "its ordinary bargains around her, unaware of the small, heavy secrets the "
    "day might hold. She put the key in her coat pocket and walked home the "
    "long way, past the shuttered chapel and the canal, while the morning's "
    "mist lingered from the night before."
)

CONTINUE_RAW = (
    "At nine the clock tower rang, and Mara stood at Tomas's door with the key "
    "warm in her fist. She did not see what the reader now saw plainly: the "
    "same crooked three-toothed mark stamped in brass above the old man's "
    "lintel, polished by a century of careful thumbs. Tomas welcomed her in as "
    "if she were expected, as if she had always been expected, and asked her, "
    "gently, whether her mother had ever spoken of the chapel cellar. Mara, "
    "thinking only of ivy and blue doors, said no, and stepped inside."
)

REFLECT_RAW = json.dumps(
    {
        "example_cues": ["glimmering with silver and gold", "embroidered with silk and silver"],
        "revised_cues": ["bit her palm like a crooked grin", "secrets the day might hold"],
        "commentary": (
            "The example renders its magic through bright fabric detail, letting "
            "glimmering silver and gold make the gift feel real. The revision "
            "works in a darker register: iron teeth that bite the palm and the "
            "secrets the day might hold keep the imagery physical while pointing "
            "it toward concealment. Both passages trust a few concrete sensory "
            "touches rather than summary statement."
        ),
    },
    ensure_ascii=False,
)

REMIX_STRATEGY_NAMES = {
    "revise": "Withholding Information",
    "continue": "Dramatic Irony",
    "reflect": "Sensory Imagery",
}


class ScriptedProvider:
    """Test double keyed on exact (system, context) pairs."""

    def __init__(self):
        self.responses: dict[tuple[str, str], str] = {}

    def register(self, template_id: str, bindings: dict[str, str], raw: str) -> None:
        prompt = render(template_id, bindings)
        self.responses[(prompt.system, prompt.context)] = raw

    def complete(self, system: str, context: str, params: dict) -> str:
        try:
            return self.responses[(system, context)]
        except KeyError:
            raise KeyError(
                f"no scripted response for context starting {context[:110]!r}"
            ) from None


def candidate_plots(title: str, paragraphs: list[str]) -> list[str]:
    plots = list(paragraphs)
    if title == CORRUPTION[0]:
        _, idx, old, new = CORRUPTION
        assert old in plots[idx]
        plots[idx] = plots[idx].replace(old, new, 1)
    return plots


def script_corpus(provider: ScriptedProvider) -> None:
    from storymix.analysis.models import TURNING_POINT_DEFINITIONS, taxonomy_text

    for title, paragraphs in TALES:
        body = "\n\n".join(paragraphs)
        plots = candidate_plots(title, paragraphs)
        segment_response = json.dumps(
            {
                "plots": [
                    {"title": t, "plot": p, "summary": s}
                    for t, p, s in zip(TITLES[title], plots, SUMMARIES[title])
                ]
            },
            ensure_ascii=False,
        )
        provider.register("segment", {"title": title, "story": body}, segment_response)
        provider.register("protagonist", {"story": body}, PROTAGONISTS[title])

        for idx, paragraph in enumerate(paragraphs):
            specs = STRATEGIES[(title, idx)]
            strategies_response = json.dumps(
                {
                    "strategies": [
                        {
                            "strategy": name,
                            "reasoning": explanation,
                            "lexicon": [c.lstrip("!") for c in cues],
                        }
                        for name, _dims, explanation, cues in specs
                    ]
                },
                ensure_ascii=False,
            )
            provider.register("infer-strategies", {"plot": paragraph}, strategies_response)

            for name, dims, explanation, _cues in specs:
                labels = OVERCATEGORIZED.get(name, [d.upper() for d in dims])
                provider.register(
                    "categorize",
                    {
                        "strategy": name,
                        "plot": paragraph,
                        "explanation": explanation,
                        "taxonomy": taxonomy_text(),
                    },
                    json.dumps({"category": labels}),
                )

            positives = set(TURNING_POINTS[(title, idx)])
            for tp_name, tp_def in TURNING_POINT_DEFINITIONS.items():
                provider.register(
                    "turning-point",
                    {"tp_name": tp_name, "tp_definition": tp_def, "plot": paragraph},
                    "Yes" if tp_name in positives else "No",
                )

            adjectives = ADJECTIVES[(title, idx)]
            provider.register(
                "emotions",
                {"protagonist": PROTAGONISTS[title], "plot": paragraph},
                "[" + ", ".join(adjectives) + "]",
            )


def check_fixture_consistency(lexicon: ValenceLexicon) -> None:
    from storymix.corpus.models import WORD_BOUNDS
    from storymix.textnorm import word_count

    lo, hi = WORD_BOUNDS
    for title, paragraphs in TALES:
        for idx, paragraph in enumerate(paragraphs):
            wc = word_count(paragraph)
            if (title, idx) == SHORT_BLOCK:
                assert wc < lo, f"{title} block {idx} should be short, has {wc} words"
            else:
                assert lo <= wc <= hi, f"{title} block {idx} has {wc} words"
            for name, dims, _expl, cues in STRATEGIES[(title, idx)]:
                for cue in cues:
                    located = locate_cue(paragraph, cue.lstrip("!"))
                    if cue.startswith("!"):
                        assert located is None, f"hallucinated cue found: {cue!r}"
                    else:
                        assert located is not None, f"cue not in {title} b{idx}: {cue!r}"
    known = {
        w
        for (t, i), words in ADJECTIVES.items()
        for w in words
        if lexicon.lookup(w) is not None
    }
    missing = {w for words in ADJECTIVES.values() for w in words} - known
    assert missing == {"reluctant", "wary", "uneasy", "weary"} - {"weary"}, missing


def main() -> None:
    fixtures = FIXTURES
    fixtures.mkdir(parents=True, exist_ok=True)
    (fixtures / "golden").mkdir(exist_ok=True)
    cassette_path = fixtures / "cassette.jsonl"
    if cassette_path.exists():
        cassette_path.unlink()

    lexicon = ValenceLexicon.from_file(bundled_lexicon_path())
    check_fixture_consistency(lexicon)

    provider = ScriptedProvider()
    script_corpus(provider)
    gateway = Gateway(mode="record", cassette=Cassette(cassette_path), provider=provider)
    classifier = PromptClassifier(gateway)

    manifest = {"stories": [{"title": t, "body": "\n\n".join(p)} for t, p in TALES]}
    (fixtures / "corpus.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )

    golden_tps: dict[str, list[str]] = {}
    golden_annotations: dict[str, list[dict]] = {}
    golden_adjectives: dict[str, list[str]] = {}
    golden_protagonists: dict[str, str] = {}
    golden_arcs: dict[str, dict] = {}
    annotations_by_name: dict[str, dict] = {}
    block_text_by_name: dict[str, str] = {}

    for title, paragraphs in TALES:
        story = ingest_story(title, "\n\n".join(paragraphs))
        analysis = run_story_pipeline(story, gateway, lexicon, classifier)
        assert len(analysis.blocks) == len(paragraphs)
        golden_protagonists[story.id] = analysis.protagonist
        golden_arcs[story.id] = {
            "signed": [p.signed_valence for p in analysis.arc.points],
            "raw": [p.raw_valence for p in analysis.arc.points],
            "coverage": [p.coverage for p in analysis.arc.points],
        }
        for label in analysis.turning_points:
            golden_tps[label.block_id] = label.types
        for block in analysis.blocks:
            golden_annotations[block.id] = []
        for ann in analysis.annotations:
            golden_annotations[ann.block_id].append(ann.to_dict())
            annotations_by_name[ann.name] = ann.to_dict()
            block_text_by_name[ann.name] = next(
                b.text for b in analysis.blocks if b.id == ann.block_id
            )
        for block, point in zip(analysis.blocks, analysis.arc.points):
            golden_adjectives[block.id] = point.adjectives

    # Remix session: record revise/continue/reflect against the same cassette.
    wi = annotations_by_name[REMIX_STRATEGY_NAMES["revise"]]
    di = annotations_by_name[REMIX_STRATEGY_NAMES["continue"]]
    si = annotations_by_name[REMIX_STRATEGY_NAMES["reflect"]]

    draft = Draft.from_story(ingest_story(DRAFT_TITLE, DRAFT_BODY, source=SOURCE_DRAFT))
    from storymix.analysis.models import StrategyAnnotation
    from storymix.gateway.templates import format_strategy_list

    resolver_map = {a["id"]: StrategyAnnotation.from_dict(a) for a in (wi, di, si)}
    ws = RemixWorkspace(draft, gateway, lambda aid: resolver_map[aid])

    def register_generation(template_id: str, bindings: dict, raw: str) -> None:
        provider.register(template_id, bindings, raw)

    def strategy_binding(ann_dict: dict) -> str:
        return format_strategy_list(
            [
                {
                    "name": ann_dict["name"],
                    "explanation": ann_dict["explanation"],
                    "cues": [c["text"] for c in ann_dict["cues"]],
                }
            ]
        )

    draft_text = "\n\n".join(b.text for b in draft.blocks)
    register_generation(
        "revise",
        {"draft": draft_text, "block": draft.blocks[0].text, "strategies": strategy_binding(wi)},
        REVISE_RAW,
    )
    register_generation(
        "continue",
        {
            "draft": draft_text,
            "strategies": strategy_binding(di),
            "hint_section": f"\n\nThe writer describes the desired next block as: {HINT}",
        },
        CONTINUE_RAW,
    )
    register_generation(
        "continue",
        {"draft": draft_text, "strategies": strategy_binding(di), "hint_section": ""},
        CONTINUE_RAW,
    )
    revision = ws.revise_block(0, [wi["id"]])
    assert revision.new_text == REVISE_RAW
    continuation = ws.continue_story([di["id"]], hint=HINT)
    assert continuation.new_text == CONTINUE_RAW

    # hint-less continuation, recorded from a fresh workspace over the same draft
    ws2 = RemixWorkspace(
        Draft.from_story(ingest_story(DRAFT_TITLE, DRAFT_BODY, source=SOURCE_DRAFT)),
        gateway,
        lambda aid: resolver_map[aid],
    )
    assert ws2.continue_story([di["id"]], hint=None).new_text == CONTINUE_RAW

    example_text = block_text_by_name[REMIX_STRATEGY_NAMES["reflect"]]
    register_generation(
        "reflect",
        {
            "strategy": si["name"],
            "explanation": si["explanation"],
            "example": example_text,
            "revised": REVISE_RAW,
        },
        REFLECT_RAW,
    )
    comparison = ws.reflect(example_text, si["id"], REVISE_RAW)
    assert comparison.example_side.cues and comparison.revised_side.cues

    session = {
        "draft_title": DRAFT_TITLE,
        "draft_body": DRAFT_BODY,
        "hint": HINT,
        "strategy_names": REMIX_STRATEGY_NAMES,
        "revise_text": REVISE_RAW,
        "continue_text": CONTINUE_RAW,
    }
    (fixtures / "remix_session.json").write_text(
        json.dumps(session, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )

    golden = {
        "turning_points.json": golden_tps,
        "annotations.json": golden_annotations,
        "adjectives.json": golden_adjectives,
        "protagonists.json": golden_protagonists,
        "arcs.json": golden_arcs,
    }
    for name, payload in golden.items():
        (fixtures / "golden" / name).write_text(
            json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=1) + "\n",
            encoding="utf-8",
        )

    n_lines = sum(1 for _ in cassette_path.open())
    print(f"wrote {cassette_path} ({n_lines} entries)")
    print(f"wrote corpus manifest, remix session, {len(golden)} golden files")


if __name__ == "__main__":
    sys.exit(main())
