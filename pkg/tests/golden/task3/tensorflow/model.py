"""TensorFlow implementation of the "task3-rnn" model.

Generated from an NLDS document; layer order follows the validated
data flow. Shapes written here exclude the batch dimension.
"""

import tensorflow as tf


def build_model():
    """Assemble the model; layers appear in data-flow order."""
    model = tf.keras.Sequential(
        [
            tf.keras.Input(shape=(100,), name="input"),
            tf.keras.layers.Embedding(input_dim=10000, output_dim=32, name="embedding"),
            tf.keras.layers.LSTM(units=64, return_sequences=True, name="lstm_1"),
            tf.keras.layers.LSTM(units=32, name="lstm_2"),
            tf.keras.layers.Dense(units=64, name="dense_1"),
            tf.keras.layers.Dense(units=10, name="dense_2"),
            tf.keras.layers.Softmax(name="softmax"),
        ],
        name="task3_rnn",
    )
    return model


def load_dataset():
    """Return ((x_train, y_train), (x_val, y_val)) for dataset."""
    raise NotImplementedError("wire up dataset loading for your environment")


def train(model):
    model.compile(
        optimizer=tf.keras.optimizers.RMSprop(learning_rate=0.001),
        loss="categorical_crossentropy",
        metrics=["accuracy"],
    )
    (x_train, y_train), (x_val, y_val) = load_dataset()
    model.fit(
        x_train,
        y_train,
        batch_size=64,
        epochs=5,
        validation_data=(x_val, y_val),
    )
    return model


if __name__ == "__main__":
    model = build_model()
    model.summary()
    train(model)
